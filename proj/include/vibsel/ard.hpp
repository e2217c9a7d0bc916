// Automatic relevance determination on the grouped-prior perceptron: train in
// cycles, re-estimate the per-group prior precisions from the evidence, and
// rank inputs by the converged precisions.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vibsel/mlp.hpp"
#include "vibsel/scg.hpp"

namespace vibsel {

enum class ArdRankBy {
    posterior_variance,  // ascending alpha
    weight_magnitude,    // descending sum of squared group weights
};

struct ArdState {
    std::vector<double> alphas;          // one per group, clamped to [1e-6, 1e6]
    std::vector<double> gammas;          // effective parameter counts, in [0, group size]
    std::vector<std::size_t> relevance;  // input indices, most relevant first
};

struct ArdOptions {
    std::size_t cycles = 2;
    std::size_t iters_per_cycle = 100;
    double alpha_init = 0.1;
    bool warm_start = true;  // carry weights between cycles; false re-inits each cycle
    ArdRankBy rank_by = ArdRankBy::posterior_variance;
    ScgOptions scg;
};

constexpr double kAlphaMin = 1e-6;
constexpr double kAlphaMax = 1e6;

// Evidence update against the Gauss-Newton (outer-product) Hessian of the
// regularized error: gamma_c = N_c - alpha_c * trace_c(A^-1), then
// alpha_c = gamma_c / (2 E_W,c). Returns (new alphas, gammas).
std::pair<std::vector<double>, std::vector<double>> reestimate_alphas(const Network& net,
                                                                      const Matrix& inputs,
                                                                      const Matrix& targets,
                                                                      std::span<const double> alphas);

// Inputs sorted by ascending alpha (ties by index); the three non-input groups
// at the tail of alphas never participate.
std::vector<std::size_t> rank_inputs(const ArdState& state);

Matrix select_inputs(const Matrix& data, std::span<const std::size_t> ordering, std::size_t k);

std::pair<Network, ArdState> ard_train(const Matrix& inputs, const Matrix& targets, const Layout& layout,
                                       const ArdOptions& opts, std::uint64_t seed);

// CSV with a "group,size,alpha,gamma" header and one row per weight group.
void save_ard_state(const ArdState& state, const Layout& layout, const std::string& path);

}  // namespace vibsel
