#include "vibsel/synthdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "vibsel/rng.hpp"

namespace vibsel {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Gear carrier: three mesh harmonics with fixed relative amplitude and phase.
// The second harmonic dominates; at 64 points per revolution the width-16
// anti-alias boxcar passes order 58 at only ~0.10 gain, so most of the
// modulated carrier energy is invisible to the coarsest route.
constexpr double kHarmonicAmp[3] = {0.5, 1.0, 0.25};
constexpr double kHarmonicPhase[3] = {0.7, 1.9, 3.1};
constexpr double kPhaseWobbleStd = 0.03;
constexpr double kAmpJitterStd = 0.02;
// Fault pulse: Gaussian amplitude bump at a fixed tooth angle, sized as a
// fraction of the revolution so the waveform is sampling-rate invariant.
// The width (16 samples at the default 1024-point resolution) keeps the
// bump several samples wide after 4x decimation and concentrates its
// spectral sidebands within the retained low-order bins, yet leaves only
// about one informative sample at 64 points per revolution.
constexpr double kPulseCenter = 0.37;
constexpr double kPulseSigmaRev = 16.0 / 1024.0;
// Per-revolution wander of the bump position (speed wobble). Magnitude
// spectra are shift-invariant, so the wander costs the frequency route
// nothing while it blurs the time routes, the 64-point one hardest.
constexpr double kPulseJitterRev = 40.0 / 1024.0;

// Cylinder signature geometry (fractions of the input width) and fault
// strength scaling per substructure.
constexpr double kBandCenterFrac[3] = {0.2, 0.5, 0.8};
constexpr std::size_t kBandHalfWidth = 8;
constexpr double kFaultStrength[3] = {1.0, 1.2, 1.4};
constexpr double kStrengthJitterStd = 0.12;

const int kPatternTable[8][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                 {1, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}};

double band_weight(std::size_t i, std::size_t center) {
    std::size_t d = i > center ? i - center : center - i;
    if (d <= 5) return 1.0;
    if (d <= 7) return 0.7;
    if (d <= kBandHalfWidth) return 0.5;
    return 0.0;
}

double baseline_profile(std::size_t i, std::size_t d) {
    double u = static_cast<double>(i) / static_cast<double>(d);
    return 1.8 + 0.6 * std::sin(2.0 * kPi * 1.3 * u + 0.7) +
           0.4 * std::sin(2.0 * kPi * 3.7 * u + 2.1);
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
    std::ostringstream msg;
    msg << path << ": parse error at line " << line_no << ": " << what;
    throw std::runtime_error(msg.str());
}

}  // namespace

Dataset generate_gear(const GearGenParams& params, std::uint64_t seed) {
    // severity_gain = 0 is allowed: it produces the degenerate no-signal
    // dataset where all three classes share one distribution.
    if (params.revs_per_class == 0 || params.points_per_rev == 0 ||
        params.mesh_order == 0 || params.noise_std < 0.0 ||
        params.severity_gain < 0.0)
        throw std::invalid_argument("generate_gear: invalid params");
    if ((params.points_per_rev & (params.points_per_rev - 1)) != 0)
        throw std::invalid_argument("generate_gear: points_per_rev must be a power of two");

    const std::size_t n_points = params.points_per_rev;
    const std::size_t n = 3 * params.revs_per_class;
    Dataset ds;
    ds.inputs = Matrix(n, n_points);
    ds.labels = Matrix(n, 1);
    ds.meta = {"gear", n_points, 1, seed};

    Rng rng(seed);
    const double sigma_t = kPulseSigmaRev;
    std::size_t row = 0;
    for (int cls = 0; cls < 3; ++cls) {
        const double severity = 0.5 * cls;
        for (std::size_t r = 0; r < params.revs_per_class; ++r, ++row) {
            double phase[3], amp[3];
            for (int h = 0; h < 3; ++h)
                phase[h] = kHarmonicPhase[h] + kPhaseWobbleStd * rng.gaussian();
            for (int h = 0; h < 3; ++h)
                amp[h] = kHarmonicAmp[h] * (1.0 + kAmpJitterStd * rng.gaussian());
            const double center =
                kPulseCenter + (2.0 * rng.uniform() - 1.0) * kPulseJitterRev;
            auto x = ds.inputs.row(row);
            for (std::size_t t = 0; t < n_points; ++t) {
                const double u = static_cast<double>(t) / static_cast<double>(n_points);
                double carrier = 0.0;
                for (int h = 0; h < 3; ++h)
                    carrier += amp[h] * std::sin(2.0 * kPi * (h + 1) *
                                                     static_cast<double>(params.mesh_order) * u +
                                                 phase[h]);
                const double dt = u - center;
                const double pulse = std::exp(-0.5 * dt * dt / (sigma_t * sigma_t));
                x[t] = carrier * (1.0 + severity * params.severity_gain * pulse) +
                       params.noise_std * rng.gaussian();
            }
            ds.labels(row, 0) = severity;
        }
    }
    return ds;
}

std::vector<IndexBand> cylinder_signature_bands(const CylinderGenParams& params) {
    std::vector<IndexBand> bands;
    for (int f = 0; f < 3; ++f) {
        const std::size_t center = static_cast<std::size_t>(
            kBandCenterFrac[f] * static_cast<double>(params.n_inputs));
        bands.push_back({center - kBandHalfWidth, center + kBandHalfWidth + 1});
    }
    return bands;
}

Dataset generate_cylinder(const CylinderGenParams& params, std::uint64_t seed) {
    if (params.n_inputs < 64 || params.noise_std < 0.0 ||
        params.signature_strength <= 0.0 || params.scale_jitter < 0.0 ||
        params.shape_jitter < 0.0)
        throw std::invalid_argument("generate_cylinder: invalid params");

    const std::size_t d = params.n_inputs;
    const std::size_t per_pattern = 33;
    const std::size_t n = 8 * per_pattern;
    Dataset ds;
    ds.inputs = Matrix(n, d);
    ds.labels = Matrix(n, 3);
    ds.meta = {"cylinder", d, 3, seed};

    std::vector<std::size_t> centers;
    for (const IndexBand& b : cylinder_signature_bands(params))
        centers.push_back((b.lo + b.hi - 1) / 2);

    Rng rng(seed);
    std::size_t row = 0;
    for (int p = 0; p < 8; ++p) {
        for (std::size_t r = 0; r < per_pattern; ++r, ++row) {
            const double scale = 1.0 + params.scale_jitter * rng.gaussian();
            const double shape_amp = params.shape_jitter * rng.gaussian();
            const double shape_phase = 2.0 * kPi * rng.uniform();
            double strength[3];
            for (int f = 0; f < 3; ++f)
                strength[f] = params.signature_strength * kFaultStrength[f] *
                              (1.0 + kStrengthJitterStd * rng.gaussian());
            auto x = ds.inputs.row(row);
            for (std::size_t i = 0; i < d; ++i) {
                double v = scale * baseline_profile(i, d);
                v += shape_amp *
                     std::sin(2.0 * kPi * static_cast<double>(i) / static_cast<double>(d) +
                              shape_phase);
                for (int f = 0; f < 3; ++f)
                    if (kPatternTable[p][f])
                        v -= strength[f] * band_weight(i, centers[f]);
                x[i] = v + params.noise_std * rng.gaussian();
            }
            for (int f = 0; f < 3; ++f)
                ds.labels(row, f) = kPatternTable[p][f];
        }
    }
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << '#' << ds.meta.name << ',' << ds.meta.n_inputs << ',' << ds.meta.n_labels
        << ',' << ds.meta.seed << '\n';
    char buf[32];
    const std::size_t n = ds.inputs.rows();
    for (std::size_t r = 0; r < n; ++r) {
        auto x = ds.inputs.row(r);
        auto y = ds.labels.row(r);
        for (std::size_t j = 0; j < x.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", x[j]);
            if (j) out << ',';
            out << buf;
        }
        for (std::size_t j = 0; j < y.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", y[j]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);

    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        parse_fail(path, 1, "missing #name,D,L,seed header");
    DatasetMeta meta;
    {
        std::string_view rest(line);
        rest.remove_prefix(1);
        std::size_t fields[3] = {0, 0, 0};
        const std::size_t c0 = rest.find(',');
        if (c0 == std::string_view::npos) parse_fail(path, 1, "bad header");
        meta.name = std::string(rest.substr(0, c0));
        std::string_view tail = rest.substr(c0 + 1);
        for (int f = 0; f < 3; ++f) {
            const std::size_t c = tail.find(',');
            const std::string_view tok =
                f < 2 ? tail.substr(0, c) : tail;
            if ((f < 2 && c == std::string_view::npos) || tok.empty())
                parse_fail(path, 1, "bad header");
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), fields[f]);
            if (ec != std::errc() || p != tok.data() + tok.size())
                parse_fail(path, 1, "bad header");
            if (f < 2) tail = tail.substr(c + 1);
        }
        meta.n_inputs = fields[0];
        meta.n_labels = fields[1];
        meta.seed = fields[2];
        if (meta.n_inputs == 0 || meta.n_labels == 0)
            parse_fail(path, 1, "header dimensions must be positive");
    }

    const std::size_t width = meta.n_inputs + meta.n_labels;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> vals;
        vals.reserve(width);
        std::string_view sv(line);
        while (true) {
            const std::size_t c = sv.find(',');
            const std::string_view tok = sv.substr(0, c);
            double v = 0.0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size())
                parse_fail(path, line_no, "bad numeric field");
            if (!std::isfinite(v)) parse_fail(path, line_no, "invalid data (non-finite value)");
            vals.push_back(v);
            if (c == std::string_view::npos) break;
            sv = sv.substr(c + 1);
        }
        if (vals.size() != width) {
            std::ostringstream what;
            what << "expected " << width << " fields, got " << vals.size();
            parse_fail(path, line_no, what.str());
        }
        rows.push_back(std::move(vals));
    }

    Dataset ds;
    ds.meta = meta;
    ds.inputs = Matrix(rows.size(), meta.n_inputs);
    ds.labels = Matrix(rows.size(), meta.n_labels);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < meta.n_inputs; ++j) ds.inputs(r, j) = rows[r][j];
        for (std::size_t j = 0; j < meta.n_labels; ++j)
            ds.labels(r, j) = rows[r][meta.n_inputs + j];
    }
    return ds;
}

}  // namespace vibsel
