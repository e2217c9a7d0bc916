#include "vibsel/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vibsel {

std::vector<double> decimate(std::span<const double> signal, std::size_t target) {
    const std::size_t n = signal.size();
    if (target == 0 || n == 0 || n % target != 0) throw std::invalid_argument("non-integer decimation");
    const std::size_t width = n / target;
    std::vector<double> out(target);
    for (std::size_t j = 0; j < target; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < width; ++i) s += signal[j * width + i];
        out[j] = s / static_cast<double>(width);
    }
    return out;
}

Spectrum dft_magnitude(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n < 8 || (n & (n - 1)) != 0) throw std::invalid_argument("length not a power of two");

    std::vector<double> re(signal.begin(), signal.end());
    std::vector<double> im(n, 0.0);

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const double wr = std::cos(ang), wi = std::sin(ang);
        for (std::size_t i = 0; i < n; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = i + k, b = i + k + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }

    Spectrum spec;
    spec.magnitudes.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) spec.magnitudes[k] = std::hypot(re[k], im[k]);
    return spec;
}

}  // namespace vibsel
