// Pipeline harness: normalization, stratified splitting, classification and
// confusion accounting, and the multi-seed PCA-vs-ARD comparison runner with
// its CSV/SVG outputs.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vibsel/ard.hpp"
#include "vibsel/matrix.hpp"
#include "vibsel/mlp.hpp"
#include "vibsel/pca.hpp"
#include "vibsel/sof.hpp"
#include "vibsel/synthdata.hpp"

namespace vibsel {

enum class Task { multilabel, graded };

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

struct Normalization {
    std::vector<double> means;
    std::vector<double> stds;  // entries < 1e-12 mark pass-through (centered-only) columns
};

Normalization normalize_fit(const Matrix& train);
Matrix normalize_apply(const Matrix& data, const Normalization& norm);

struct SplitResult {
    Dataset train;
    Dataset test;
};

// Stratified by exact label row; each stratum is shuffled by seed and cut at
// round(frac * count), clamped so both sides stay nonempty.
SplitResult split(const Dataset& ds, double train_frac, std::uint64_t seed);

// multilabel: threshold at 0.5 per output; graded: snap to {0, 0.5, 1} with
// ties toward the larger value.
Matrix classify(const Matrix& outputs, Task task);

// One decision per (example, output) for multilabel, per example for graded.
// Graded wrong-nonzero-severity decisions land in no bucket; they only lower
// accuracy.
ConfusionCounts confusion(const Matrix& pred, const Matrix& truth, Task task);

double accuracy_percent(const Matrix& pred, const Matrix& truth, Task task);

struct PipelineConfig {
    std::string dataset = "gear";  // gear | cylinder | path to a dataset CSV
    std::string route = "freq";    // sof | time256 | time64 | freq | features62
    bool run_pca = true;
    bool run_ard = true;
    std::vector<std::size_t> k_list = {10, 7, 5, 3};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::uint64_t data_seed = 42;  // generator seed; the per-run seeds drive splits and inits
    double train_frac = 2.0 / 3.0;
    std::size_t sof_keep = 50;
    std::size_t n_hidden = 8;
    GearGenParams gear;
    CylinderGenParams cylinder;
    ArdOptions ard;
    std::size_t final_iters = 100;  // SCG iterations for each final classifier
    double final_alpha = 1e-3;      // uniform weight decay for final classifiers
    bool ard_rerun_per_k = false;   // re-run ARD per k instead of truncating one ordering
    std::string out_dir = ".";
    bool emit_svg = true;
};

struct EvalReport {
    std::string method;         // pca | ard
    std::string preprocessing;  // route name
    std::size_t k = 0;
    std::vector<double> seed_accuracies;  // percentages, one per seed
    double mean_accuracy = 0.0;
    ConfusionCounts confusion;  // summed over seeds
};

// Per-example route preprocessing (identity for route "sof", whose column
// selection is fitted per split inside the harness).
Matrix route_transform(const Matrix& raw, const std::string& route);

// Everything fitted from a training set that the per-k cells reuse. Holding
// these in one struct keeps the test-data leakage surface auditable: nothing
// here ever sees test rows.
struct FittedSelection {
    std::vector<std::size_t> sof_selected;  // route "sof" only
    Normalization norm;                     // post-selection input normalization
    bool has_pca = false;
    PcaModel pca;  // fitted at max k
    Normalization pca_norm;
    bool has_ard = false;
    ArdState ard;
    std::vector<std::size_t> ard_order;
};

FittedSelection fit_selection(const Matrix& train_inputs, const Matrix& train_labels,
                              const PipelineConfig& cfg, std::uint64_t seed);

std::vector<EvalReport> run_pipeline(const PipelineConfig& cfg);

// Table analogue: one row per k, one accuracy column per method.
void write_report_csv(const std::vector<EvalReport>& reports, const std::string& path);
// Accuracy-vs-k polyline chart, one line per method.
void write_trend_svg(const std::vector<EvalReport>& reports, const std::string& path);
// The fully resolved configuration, one key=value token per field.
std::string describe_config(const PipelineConfig& cfg);

}  // namespace vibsel
