#include "pour/net/adam.hpp"

#include <cmath>
#include <vector>

#include "pour/errors.hpp"

namespace pour::net {

AdamState AdamState::for_params(const NetParams& params) {
    AdamState s;
    s.m = NetParams::zeros(params.layers[0].n, params.layers[0].d,
                           static_cast<int>(params.layers.size()));
    s.v = NetParams::zeros(params.layers[0].n, params.layers[0].d,
                           static_cast<int>(params.layers.size()));
    return s;
}

void adam_step(NetParams& params, const NetParams& grads, AdamState& state, double lr) {
    struct Slot {
        std::string name;
        double* p;
        const double* g;
        double* m;
        double* v;
        std::size_t size;
    };
    std::vector<Slot> slots;
    params.for_each_tensor([&](const std::string& name, double* data, std::size_t size) {
        slots.push_back({name, data, nullptr, nullptr, nullptr, size});
    });
    std::size_t k = 0;
    grads.for_each_tensor([&](const std::string&, const double* data, std::size_t size) {
        if (k >= slots.size() || slots[k].size != size) {
            throw numeric_error("adam_step: gradient layout mismatch");
        }
        slots[k++].g = data;
    });
    k = 0;
    state.m.for_each_tensor([&](const std::string&, double* data, std::size_t size) {
        if (k >= slots.size() || slots[k].size != size) {
            throw numeric_error("adam_step: state layout mismatch");
        }
        slots[k++].m = data;
    });
    k = 0;
    state.v.for_each_tensor([&](const std::string&, double* data, std::size_t size) {
        if (k >= slots.size() || slots[k].size != size) {
            throw numeric_error("adam_step: state layout mismatch");
        }
        slots[k++].v = data;
    });

    for (const auto& s : slots) {
        for (std::size_t i = 0; i < s.size; ++i) {
            if (!std::isfinite(s.g[i])) {
                throw numeric_error("adam_step: non-finite gradient in " + s.name);
            }
        }
    }

    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (auto& s : slots) {
        for (std::size_t i = 0; i < s.size; ++i) {
            s.m[i] = state.beta1 * s.m[i] + (1.0 - state.beta1) * s.g[i];
            s.v[i] = state.beta2 * s.v[i] + (1.0 - state.beta2) * s.g[i] * s.g[i];
            const double m_hat = s.m[i] / bc1;
            const double v_hat = s.v[i] / bc2;
            s.p[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
        }
    }
}

} // namespace pour::net
