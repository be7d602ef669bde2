#include "pour/net/backward.hpp"

#include "pour/errors.hpp"

namespace pour::net {

namespace detail {
Eigen::MatrixXd stack_weights(const LstmParams& p);
} // namespace detail

NetParams backward(const NetParams& params, const ForwardCache& cache,
                   const Eigen::VectorXd& d_predictions) {
    params.check_shapes();
    const std::size_t n_layers = params.layers.size();
    if (cache.caches.size() != n_layers || cache.dropped.size() != n_layers) {
        throw numeric_error("backward: cache layer count mismatch");
    }
    const auto steps = static_cast<std::size_t>(d_predictions.size());
    if (steps == 0 || cache.caches[0].size() != steps) {
        throw numeric_error("backward: cache step count mismatch");
    }

    NetParams grads = NetParams::zeros(params.layers[0].n, params.layers[0].d,
                                       static_cast<int>(n_layers));

    // Head: ŷ(t) = W_y z(t) + b_y over the top layer's dropped output z.
    const auto& top = cache.dropped[n_layers - 1];
    std::vector<Eigen::VectorXd> d_stream(steps); // gradient w.r.t. layer output stream
    for (std::size_t t = 0; t < steps; ++t) {
        const double dy = d_predictions[static_cast<Eigen::Index>(t)];
        grads.head.W_y += dy * top[t].transpose();
        grads.head.b_y += dy;
        d_stream[t] = params.head.W_y.transpose() * dy;
    }

    for (std::size_t li = n_layers; li-- > 0;) {
        const LstmParams& L = params.layers[li];
        LstmParams& G = grads.layers[li];
        const int n = L.n;
        const bool has_mask = !cache.masks[li].empty() && cache.masks[li][0].size() > 0;
        const Eigen::MatrixXd w_stack = detail::stack_weights(L);

        Eigen::MatrixXd dw_stack = Eigen::MatrixXd::Zero(4 * n, n + L.d);
        Eigen::VectorXd db_stack = Eigen::VectorXd::Zero(4 * n);

        std::vector<Eigen::VectorXd> d_below;
        if (li > 0) d_below.assign(steps, Eigen::VectorXd::Zero(L.d));

        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
        Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd dc_next = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd d_pre(4 * n);
        Eigen::VectorXd d_concat(n + L.d);
        for (std::size_t t = steps; t-- > 0;) {
            const CellCache& cc = cache.caches[li][t];
            // Through the (inverted) dropout mask on the non-recurrent path.
            Eigen::VectorXd dh = has_mask ? d_stream[t].cwiseProduct(cache.masks[li][t]).eval()
                                          : d_stream[t];
            dh += dh_next;

            const Eigen::VectorXd d_o = dh.cwiseProduct(cc.tanh_c);
            const Eigen::VectorXd d_o_pre = d_o.cwiseProduct(cc.o).cwiseProduct(ones - cc.o);

            Eigen::VectorXd dc =
                dh.cwiseProduct(cc.o).cwiseProduct(ones - cc.tanh_c.cwiseProduct(cc.tanh_c));
            dc += dc_next;
            dc += L.p_o.cwiseProduct(d_o_pre); // output peephole reads the new cell

            const Eigen::VectorXd d_i = dc.cwiseProduct(cc.g);
            const Eigen::VectorXd d_i_pre = d_i.cwiseProduct(cc.i).cwiseProduct(ones - cc.i);
            const Eigen::VectorXd d_f = dc.cwiseProduct(cc.c_prev);
            const Eigen::VectorXd d_f_pre = d_f.cwiseProduct(cc.f).cwiseProduct(ones - cc.f);
            const Eigen::VectorXd d_g = dc.cwiseProduct(cc.i);
            const Eigen::VectorXd d_g_pre =
                d_g.cwiseProduct(ones - cc.g.cwiseProduct(cc.g));

            d_pre.segment(0, n) = d_i_pre;
            d_pre.segment(n, n) = d_f_pre;
            d_pre.segment(2 * n, n) = d_g_pre;
            d_pre.segment(3 * n, n) = d_o_pre;
            dw_stack.noalias() += d_pre * cc.concat.transpose();
            db_stack += d_pre;
            G.p_i += d_i_pre.cwiseProduct(cc.c_prev);
            G.p_f += d_f_pre.cwiseProduct(cc.c_prev);
            G.p_o += d_o_pre.cwiseProduct(cc.c);

            d_concat.noalias() = w_stack.transpose() * d_pre;
            dh_next = d_concat.head(n);
            if (li > 0) d_below[t] = d_concat.tail(L.d);
            dc_next = dc.cwiseProduct(cc.f) + L.p_i.cwiseProduct(d_i_pre) +
                      L.p_f.cwiseProduct(d_f_pre);
        }
        G.W_i = dw_stack.middleRows(0, n);
        G.W_f = dw_stack.middleRows(n, n);
        G.W_g = dw_stack.middleRows(2 * n, n);
        G.W_o = dw_stack.middleRows(3 * n, n);
        G.b_i = db_stack.segment(0, n);
        G.b_f = db_stack.segment(n, n);
        G.b_g = db_stack.segment(2 * n, n);
        G.b_o = db_stack.segment(3 * n, n);
        if (li > 0) d_stream = std::move(d_below);
    }
    return grads;
}

} // namespace pour::net
