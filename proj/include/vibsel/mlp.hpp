// Two-layer perceptron with weights partitioned into groups: one group per
// input (the fan-out of that input), plus hidden biases, second-layer weights
// and output biases. Grouping is what the relevance machinery hangs on.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vibsel/matrix.hpp"

namespace vibsel {

enum class OutputKind { logistic, linear };

struct Layout {
    std::size_t n_in = 1;
    std::size_t n_hidden = 8;
    std::size_t n_out = 1;
    OutputKind output_kind = OutputKind::logistic;

    std::size_t param_count() const {
        return n_in * n_hidden + n_hidden + n_hidden * n_out + n_out;
    }
    // input groups first, then hidden biases, second-layer weights, output biases
    std::size_t group_count() const { return n_in + 3; }
    bool operator==(const Layout&) const = default;
};

class Network {
public:
    Network(Layout layout, std::vector<double> params);

    const Layout& layout() const { return layout_; }
    std::size_t param_count() const { return params_.size(); }
    const std::vector<double>& params() const { return params_; }
    std::vector<double>& params() { return params_; }

    // flat order: w1 (input-major), b1, w2 (hidden-major), b2
    double w1(std::size_t i, std::size_t h) const { return params_[i * layout_.n_hidden + h]; }
    double b1(std::size_t h) const { return params_[layout_.n_in * layout_.n_hidden + h]; }
    double w2(std::size_t h, std::size_t o) const { return params_[w2_off_ + h * layout_.n_out + o]; }
    double b2(std::size_t o) const { return params_[b2_off_ + o]; }

    // half-open parameter range of group c; every group is contiguous
    std::pair<std::size_t, std::size_t> group_range(std::size_t c) const;

    std::vector<double> forward(std::span<const double> x) const;
    Matrix forward_batch(const Matrix& inputs) const;

private:
    Layout layout_;
    std::size_t w2_off_ = 0;
    std::size_t b2_off_ = 0;
    std::vector<double> params_;
};

struct ErrorGrad {
    double error = 0.0;
    std::vector<double> grad;
};

// Gaussian init, per-layer std 1/sqrt(fan_in), deterministic in seed.
Network init_network(const Layout& layout, std::uint64_t seed);

// Cross-entropy (logistic outputs) or half-sum-of-squares (linear outputs)
// summed over examples, with the exact backprop gradient.
ErrorGrad data_error_grad(const Network& net, const Matrix& inputs, const Matrix& targets);

// Plain single-loop reference for the blocked batch accumulation above.
ErrorGrad data_error_grad_serial(const Network& net, const Matrix& inputs, const Matrix& targets);

// Adds sum_c alpha_c * (1/2) sum_{w in c} w^2 on top of the data error.
// alphas has one entry per group; negative entries are rejected.
ErrorGrad regularized_error_grad(const Network& net, const Matrix& inputs, const Matrix& targets,
                                 std::span<const double> alphas);

// Flat CSV: "#mlp,n_in,n_hidden,n_out,kind" header, one parameter per line in
// the canonical w1, b1, w2, b2 order. Round-trips exactly.
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

}  // namespace vibsel
