#include "vibsel/ard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "vibsel/kernels.hpp"
#include "vibsel/linalg.hpp"

namespace vibsel {

namespace {

// Rows of the output-preactivation Jacobian, one per (example, output), scaled
// by sqrt of the Gauss-Newton output weight (y(1-y) for logistic, 1 for linear).
Matrix scaled_jacobian(const Network& net, const Matrix& inputs) {
    const Layout& l = net.layout();
    const std::size_t p = net.param_count();
    const std::size_t n = inputs.rows();
    Matrix j(n * l.n_out, p, 0.0);
    const std::size_t w2_off = l.n_in * l.n_hidden + l.n_hidden;
    const std::size_t b2_off = w2_off + l.n_hidden * l.n_out;

#pragma omp parallel
    {
        std::vector<double> z(l.n_hidden);
#pragma omp for schedule(static)
        for (std::int64_t rr = 0; rr < static_cast<std::int64_t>(n); ++rr) {
            const std::size_t r = static_cast<std::size_t>(rr);
            const auto x = inputs.row(r);
            for (std::size_t h = 0; h < l.n_hidden; ++h) {
                double u = net.b1(h);
                for (std::size_t i = 0; i < l.n_in; ++i) u += net.w1(i, h) * x[i];
                z[h] = std::tanh(u);
            }
            for (std::size_t o = 0; o < l.n_out; ++o) {
                double scale = 1.0;
                if (l.output_kind == OutputKind::logistic) {
                    double a = net.b2(o);
                    for (std::size_t h = 0; h < l.n_hidden; ++h) a += net.w2(h, o) * z[h];
                    const double y = 1.0 / (1.0 + std::exp(-a));
                    scale = std::sqrt(std::max(y * (1.0 - y), 1e-12));
                }
                double* row = j.data() + (r * l.n_out + o) * p;
                for (std::size_t h = 0; h < l.n_hidden; ++h) {
                    const double dz = net.w2(h, o) * (1.0 - z[h] * z[h]);
                    for (std::size_t i = 0; i < l.n_in; ++i) row[i * l.n_hidden + h] = scale * dz * x[i];
                    row[l.n_in * l.n_hidden + h] = scale * dz;
                    row[w2_off + h * l.n_out + o] = scale * z[h];
                }
                row[b2_off + o] = scale;
            }
        }
    }
    return j;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> reestimate_alphas(const Network& net,
                                                                      const Matrix& inputs,
                                                                      const Matrix& targets,
                                                                      std::span<const double> alphas) {
    const Layout& l = net.layout();
    if (alphas.size() != l.group_count()) throw std::invalid_argument("invalid hyperparameter");
    if (inputs.cols() != l.n_in || targets.rows() != inputs.rows())
        throw std::invalid_argument("shape mismatch");

    const Matrix j = scaled_jacobian(net, inputs);
    Matrix a;
    kernels::par::gram(j, a);
    for (std::size_t c = 0; c < alphas.size(); ++c) {
        const auto [lo, hi] = net.group_range(c);
        for (std::size_t i = lo; i < hi; ++i) a(i, i) += alphas[c];
    }

    const std::vector<double> inv_diag = spd_inverse_diagonal(SymMatrix(std::move(a)));

    std::vector<double> new_alphas(alphas.size()), gammas(alphas.size());
    for (std::size_t c = 0; c < alphas.size(); ++c) {
        const auto [lo, hi] = net.group_range(c);
        const double group_size = static_cast<double>(hi - lo);
        double trace_c = 0.0, e_w = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            trace_c += inv_diag[i];
            e_w += 0.5 * net.params()[i] * net.params()[i];
        }
        double gamma = group_size - alphas[c] * trace_c;
        gamma = std::clamp(gamma, 0.0, group_size);
        gammas[c] = gamma;
        new_alphas[c] = e_w < 1e-12 ? kAlphaMax : std::clamp(gamma / (2.0 * e_w), kAlphaMin, kAlphaMax);
    }
    return {std::move(new_alphas), std::move(gammas)};
}

std::vector<std::size_t> rank_inputs(const ArdState& state) {
    if (state.alphas.size() < 4) throw std::invalid_argument("invalid hyperparameter");
    const std::size_t n_in = state.alphas.size() - 3;
    std::vector<std::size_t> order(n_in);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return state.alphas[i] < state.alphas[j];
    });
    return order;
}

Matrix select_inputs(const Matrix& data, std::span<const std::size_t> ordering, std::size_t k) {
    if (k > data.cols() || k > ordering.size()) throw std::invalid_argument("k exceeds dimension");
    return select_columns(data, ordering, k);
}

std::pair<Network, ArdState> ard_train(const Matrix& inputs, const Matrix& targets, const Layout& layout,
                                       const ArdOptions& opts, std::uint64_t seed) {
    if (opts.cycles == 0 || opts.iters_per_cycle == 0) throw std::invalid_argument("invalid options");
    if (!(opts.alpha_init > 0.0)) throw std::invalid_argument("invalid hyperparameter");
    if (inputs.cols() != layout.n_in) throw std::invalid_argument("shape mismatch");

    Network net = init_network(layout, seed);
    ArdState state;
    state.alphas.assign(layout.group_count(), opts.alpha_init);

    ScgOptions scg_opts = opts.scg;
    scg_opts.max_iters = opts.iters_per_cycle;

    for (std::size_t cycle = 0; cycle < opts.cycles; ++cycle) {
        if (!opts.warm_start && cycle > 0) net = init_network(layout, seed);
        const std::vector<double> alphas = state.alphas;
        const Objective objective = [&](const std::vector<double>& w, std::vector<double>& grad) {
            const Network candidate(layout, w);
            ErrorGrad eg = regularized_error_grad(candidate, inputs, targets, alphas);
            grad = std::move(eg.grad);
            return eg.error;
        };
        ScgResult res = scg_minimize(objective, net.params(), scg_opts);
        net.params() = std::move(res.w);

        auto [new_alphas, gammas] = reestimate_alphas(net, inputs, targets, state.alphas);
        state.alphas = std::move(new_alphas);
        state.gammas = std::move(gammas);
    }

    if (opts.rank_by == ArdRankBy::posterior_variance) {
        state.relevance = rank_inputs(state);
    } else {
        std::vector<double> group_ss(layout.n_in, 0.0);
        for (std::size_t c = 0; c < layout.n_in; ++c) {
            const auto [lo, hi] = net.group_range(c);
            for (std::size_t i = lo; i < hi; ++i) group_ss[c] += net.params()[i] * net.params()[i];
        }
        state.relevance.resize(layout.n_in);
        std::iota(state.relevance.begin(), state.relevance.end(), 0);
        std::stable_sort(state.relevance.begin(), state.relevance.end(),
                         [&](std::size_t i, std::size_t j) { return group_ss[i] > group_ss[j]; });
    }
    return {std::move(net), std::move(state)};
}

void save_ard_state(const ArdState& state, const Layout& layout, const std::string& path) {
    if (state.alphas.size() != layout.group_count() || state.gammas.size() != layout.group_count())
        throw std::invalid_argument("shape mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "group,size,alpha,gamma\n";
    char buf[80];
    for (std::size_t c = 0; c < layout.group_count(); ++c) {
        const std::size_t size = c < layout.n_in        ? layout.n_hidden
                                 : c == layout.n_in     ? layout.n_hidden
                                 : c == layout.n_in + 1 ? layout.n_hidden * layout.n_out
                                                        : layout.n_out;
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", c, size, state.alphas[c], state.gammas[c]);
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vibsel
