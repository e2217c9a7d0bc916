// Synthetic stand-ins for the measured datasets: a gear-mesh vibration
// generator with a once-per-revolution fault pulse, and a pseudo
// modal-property generator for the three-substructure cylinder population.
// Also the dataset CSV format used everywhere.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vibsel/matrix.hpp"

namespace vibsel {

struct DatasetMeta {
    std::string name;
    std::size_t n_inputs = 0;
    std::size_t n_labels = 0;
    std::uint64_t seed = 0;
};

struct Dataset {
    Matrix inputs;  // N x D
    Matrix labels;  // N x L
    DatasetMeta meta;
};

struct GearGenParams {
    std::size_t revs_per_class = 100;
    std::size_t points_per_rev = 1024;  // power of two
    std::size_t mesh_order = 29;        // tooth-passing cycles per revolution
    double noise_std = 0.25;
    double severity_gain = 1.4;
};

struct CylinderGenParams {
    std::size_t n_inputs = 200;
    double noise_std = 0.1;
    double signature_strength = 1.0;
    double scale_jitter = 0.03;  // per-example multiplicative baseline spread
    double shape_jitter = 0.5;   // per-example smooth profile perturbation
};

struct IndexBand {
    std::size_t lo = 0;  // inclusive
    std::size_t hi = 0;  // exclusive
};

// One revolution per example, three severities {0, 0.5, 1}, revs_per_class
// rows each; labels are the single graded severity. Deterministic in seed.
Dataset generate_gear(const GearGenParams& params, std::uint64_t seed);

// 264 pseudo modal-property vectors over the eight {0,1}^3 fault patterns (33
// each); faults subtract a localized bump on a dedicated index band.
Dataset generate_cylinder(const CylinderGenParams& params, std::uint64_t seed);

// The three substructure signature bands used by generate_cylinder.
std::vector<IndexBand> cylinder_signature_bands(const CylinderGenParams& params);

// Layout: "#name,D,L,seed" header, then one example per line with D inputs
// followed by L labels. Round-trips exactly.
void save_csv(const Dataset& ds, const std::string& path);
Dataset load_csv(const std::string& path);

}  // namespace vibsel
