#pragma once

#include <Eigen/Core>

#include "pour/net/forward.hpp"
#include "pour/net/params.hpp"

namespace pour::net {

/// Exact backpropagation through time over one cached sequence pass.
/// d_predictions holds dLoss/dŷ(t); the returned structure mirrors the
/// parameter layout and contains dLoss/dParam for every tensor, including
/// the three peephole vectors (the output gate's peephole also feeds back
/// into dc(t)). Throws numeric_error when the cache does not match.
NetParams backward(const NetParams& params, const ForwardCache& cache,
                   const Eigen::VectorXd& d_predictions);

} // namespace pour::net
