#pragma once

#include <cstdint>
#include <string>

namespace pour::net {

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::string worst_tensor;
};

/// Compares BPTT gradients against central finite differences (step h) of
/// the sequence loss on a randomly initialized net over a random input
/// sequence. Every parameter entry is perturbed.
GradCheckReport gradient_check(int hidden_units, int input_dim, int steps, std::uint64_t seed,
                               double h = 1e-5, int n_layers = 1);

} // namespace pour::net
