// Gear-route preprocessing transforms: anti-aliased decimation and one-sided
// magnitude spectra.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vibsel {

struct Spectrum {
    std::vector<double> magnitudes;  // bins 0 .. n/2-1, all >= 0
};

// Moving-average low-pass of width n/target followed by stride sampling.
// target must divide the signal length.
std::vector<double> decimate(std::span<const double> signal, std::size_t target);

// Radix-2 transform; length must be a power of two >= 8. Returns the one-sided
// magnitude vector |X_0| .. |X_{n/2-1}|.
Spectrum dft_magnitude(std::span<const double> signal);

}  // namespace vibsel
