// Time-series feature extraction: six amplitude statistics plus AR, MA and
// ARMA model coefficients, concatenated into the fixed 62-element vector.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace vibsel {

struct BasicStats {
    double mean = 0.0;
    double rms = 0.0;
    double crest = 0.0;     // max|x| / rms, 0 when rms is 0
    double variance = 0.0;  // (n-1) denominator
    double skewness = 0.0;  // m3 / m2^1.5, 0 for a constant signal
    double kurtosis = 0.0;  // m4 / m2^2 (raw; Gaussian -> 3), 0 for a constant signal

    std::array<double, 6> as_array() const { return {mean, rms, crest, variance, skewness, kurtosis}; }
};

struct FeatureConfig {
    std::size_t ar_order = 20;
    std::size_t ma_order = 20;
    std::size_t arma_p = 8;
    std::size_t arma_q = 8;

    std::size_t total() const { return 6 + ar_order + ma_order + arma_p + arma_q; }
};

BasicStats basic_stats(std::span<const double> signal);

// Burg estimates in predictor form, x_t ~ sum a_k x_{t-k}, fitted on the
// mean-removed signal. Reflection coefficients are clamped just inside the
// unit circle, so the model is always stable.
std::vector<double> ar_coeffs(std::span<const double> signal, std::size_t p);

// Durbin: long AR of order 4q, then least squares of the signal on the lagged
// long-AR residuals.
std::vector<double> ma_coeffs(std::span<const double> signal, std::size_t q);

// Hannan-Rissanen: long-AR residuals, then least squares on lagged signal and
// residuals. Returns a_1..a_p followed by b_1..b_q.
std::vector<double> arma_coeffs(std::span<const double> signal, std::size_t p, std::size_t q);

// 6 basic stats + AR + MA + ARMA in that order; 62 values at the defaults.
std::vector<double> feature_vector(std::span<const double> signal, const FeatureConfig& cfg = {});

}  // namespace vibsel
