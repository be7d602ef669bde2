#pragma once

#include <cstdint>

#include "pour/net/params.hpp"

namespace pour::net {

/// Adam with bias correction; beta1/beta2/eps fixed at 0.9 / 0.999 / 1e-8.
struct AdamState {
    NetParams m; // first moments, same layout as the parameters
    NetParams v; // second moments
    std::int64_t step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState for_params(const NetParams& params);
};

/// One update in place. Throws numeric_error naming the offending tensor
/// when a gradient is non-finite (abort-epoch condition).
void adam_step(NetParams& params, const NetParams& grads, AdamState& state, double lr);

} // namespace pour::net
