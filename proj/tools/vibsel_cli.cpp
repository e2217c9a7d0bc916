// Command-line front end: dataset generation, standalone input selection,
// network training/evaluation, and the full multi-seed comparison pipeline.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vibsel/ard.hpp"
#include "vibsel/eval.hpp"
#include "vibsel/mlp.hpp"
#include "vibsel/pca.hpp"
#include "vibsel/scg.hpp"
#include "vibsel/sof.hpp"
#include "vibsel/synthdata.hpp"

namespace {

using namespace vibsel;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string describe_gear(const GearGenParams& g) {
    std::ostringstream s;
    s << "revs_per_class=" << g.revs_per_class << " points_per_rev=" << g.points_per_rev
      << " mesh_order=" << g.mesh_order << " noise_std=" << format_double(g.noise_std)
      << " severity_gain=" << format_double(g.severity_gain);
    return s.str();
}

std::string describe_cylinder(const CylinderGenParams& c) {
    std::ostringstream s;
    s << "cyl_inputs=" << c.n_inputs << " cyl_noise_std=" << format_double(c.noise_std)
      << " signature_strength=" << format_double(c.signature_strength)
      << " scale_jitter=" << format_double(c.scale_jitter)
      << " shape_jitter=" << format_double(c.shape_jitter);
    return s.str();
}

// Manifest lines are collected per run and written in one shot so reruns
// produce identical bytes.
void write_manifest(const std::string& dir, const std::vector<std::string>& lines) {
    std::ofstream out(dir + "/manifest.txt");
    if (!out) throw std::runtime_error("cannot open for writing: " + dir + "/manifest.txt");
    for (const std::string& line : lines) out << line << '\n';
}

std::string out_dir_of(const std::string& path) {
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return dir.empty() ? std::string(".") : dir;
}

void add_gear_options(CLI::App* sub, GearGenParams& g) {
    sub->add_option("--revs", g.revs_per_class, "gear revolutions per severity class")
        ->capture_default_str();
    sub->add_option("--points", g.points_per_rev, "gear samples per revolution (power of two)")
        ->capture_default_str();
    sub->add_option("--mesh-order", g.mesh_order, "gear mesh cycles per revolution")
        ->capture_default_str();
    sub->add_option("--noise-std", g.noise_std, "gear measurement noise std")
        ->capture_default_str();
    sub->add_option("--severity-gain", g.severity_gain, "gear fault pulse modulation gain")
        ->capture_default_str();
}

void add_cylinder_options(CLI::App* sub, CylinderGenParams& c) {
    sub->add_option("--cyl-inputs", c.n_inputs, "cylinder pseudo modal vector width")
        ->capture_default_str();
    sub->add_option("--cyl-noise-std", c.noise_std, "cylinder measurement noise std")
        ->capture_default_str();
    sub->add_option("--signature-strength", c.signature_strength, "cylinder fault signature depth")
        ->capture_default_str();
    sub->add_option("--scale-jitter", c.scale_jitter, "cylinder per-example scale spread")
        ->capture_default_str();
    sub->add_option("--shape-jitter", c.shape_jitter, "cylinder smooth profile perturbation")
        ->capture_default_str();
}

Dataset load_or_generate(const std::string& dataset, const GearGenParams& gear,
                         const CylinderGenParams& cyl, std::uint64_t seed) {
    if (dataset == "gear") return generate_gear(gear, seed);
    if (dataset == "cylinder") return generate_cylinder(cyl, seed);
    return load_csv(dataset);
}

void run_generate(const std::string& dataset, const GearGenParams& gear,
                  const CylinderGenParams& cyl, std::uint64_t seed, const std::string& out) {
    const Dataset ds = load_or_generate(dataset, gear, cyl, seed);
    save_csv(ds, out);
    std::ostringstream line;
    line << std::filesystem::path(out).filename().string() << ": command=generate dataset="
         << dataset << " seed=" << seed << ' '
         << (dataset == "cylinder" ? describe_cylinder(cyl) : describe_gear(gear));
    write_manifest(out_dir_of(out), {line.str()});
    std::cout << "wrote " << out << " (" << ds.inputs.rows() << "x" << ds.inputs.cols() << ")\n";
}

void run_select(const std::string& in, const std::string& method, std::size_t k,
                std::uint64_t seed, std::size_t hidden, const ArdOptions& ard_opts,
                const std::string& out) {
    Dataset ds = load_csv(in);
    const std::size_t d = ds.inputs.cols();
    if (k == 0 || k > d) {
        std::ostringstream msg;
        msg << "invalid k: " << k << " (dataset has " << d << " inputs)";
        throw std::invalid_argument(msg.str());
    }

    Dataset sel;
    sel.labels = ds.labels;
    sel.meta = {ds.meta.name + "_" + method, k, ds.meta.n_labels, seed};
    if (method == "sof") {
        std::vector<std::vector<double>> healthy, damaged;
        for (std::size_t r = 0; r < ds.inputs.rows(); ++r) {
            auto lab = ds.labels.row(r);
            const bool all_zero =
                std::all_of(lab.begin(), lab.end(), [](double v) { return v == 0.0; });
            auto xi = ds.inputs.row(r);
            (all_zero ? healthy : damaged).emplace_back(xi.begin(), xi.end());
        }
        const SofRanking ranking =
            rank_by_sof(Matrix::from_rows(healthy), Matrix::from_rows(damaged), k);
        sel.inputs = select_columns(ds.inputs, ranking.selected, k);
    } else if (method == "pca") {
        const Normalization norm = normalize_fit(ds.inputs);
        const Matrix xn = normalize_apply(ds.inputs, norm);
        sel.inputs = project(fit_pca(xn, k), xn);
    } else {  // ard: rank on normalized data, emit the chosen raw columns
        const Normalization norm = normalize_fit(ds.inputs);
        const Matrix xn = normalize_apply(ds.inputs, norm);
        const Task task = ds.labels.cols() == 1 ? Task::graded : Task::multilabel;
        const Layout layout{d, hidden, ds.labels.cols(),
                            task == Task::graded ? OutputKind::linear : OutputKind::logistic};
        const ArdState state = ard_train(xn, ds.labels, layout, ard_opts, seed).second;
        sel.inputs = select_columns(ds.inputs, state.relevance, k);
    }
    save_csv(sel, out);
    std::ostringstream line;
    line << std::filesystem::path(out).filename().string() << ": command=select in=" << in
         << " method=" << method << " k=" << k << " seed=" << seed << " hidden=" << hidden
         << " ard_cycles=" << ard_opts.cycles << " ard_iters=" << ard_opts.iters_per_cycle;
    write_manifest(out_dir_of(out), {line.str()});
    std::cout << "wrote " << out << " (" << sel.inputs.rows() << "x" << sel.inputs.cols() << ")\n";
}

void run_train(const std::string& in, std::size_t hidden, std::size_t iters, double alpha,
               std::uint64_t seed, const std::string& out) {
    const Dataset ds = load_csv(in);
    const Task task = ds.labels.cols() == 1 ? Task::graded : Task::multilabel;
    const Layout layout{ds.inputs.cols(), hidden, ds.labels.cols(),
                        task == Task::graded ? OutputKind::linear : OutputKind::logistic};
    const std::vector<double> alphas(layout.group_count(), alpha);
    const auto objective = [&](const std::vector<double>& w, std::vector<double>& g) {
        Network net(layout, w);
        ErrorGrad eg = regularized_error_grad(net, ds.inputs, ds.labels, alphas);
        g = std::move(eg.grad);
        return eg.error;
    };
    ScgOptions opts;
    opts.max_iters = iters;
    const ScgResult fit = scg_minimize(objective, init_network(layout, seed).params(), opts);
    save_network(Network(layout, fit.w), out);

    std::ostringstream line;
    line << std::filesystem::path(out).filename().string() << ": command=train in=" << in
         << " hidden=" << hidden << " iters=" << iters << " alpha=" << format_double(alpha)
         << " seed=" << seed;
    write_manifest(out_dir_of(out), {line.str()});
    std::cout << "trained " << out << " (final error " << format_double(fit.trace.errors.back())
              << ", " << fit.trace.iterations << " iterations)\n";
}

void run_evaluate(const std::string& in, const std::string& net_path, const std::string& out) {
    const Dataset ds = load_csv(in);
    const Network net = load_network(net_path);
    if (net.layout().n_in != ds.inputs.cols() || net.layout().n_out != ds.labels.cols())
        throw std::invalid_argument("dimension mismatch between dataset and network");
    const Task task = ds.labels.cols() == 1 ? Task::graded : Task::multilabel;
    const Matrix pred = classify(net.forward_batch(ds.inputs), task);
    const double acc = accuracy_percent(pred, ds.labels, task);
    const ConfusionCounts cc = confusion(pred, ds.labels, task);

    char accbuf[32];
    std::snprintf(accbuf, sizeof accbuf, "%.2f", acc);
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open for writing: " + out);
    f << "accuracy,tp,tn,fp,fn\n"
      << accbuf << ',' << cc.tp << ',' << cc.tn << ',' << cc.fp << ',' << cc.fn << '\n';

    std::ostringstream line;
    line << std::filesystem::path(out).filename().string() << ": command=evaluate in=" << in
         << " net=" << net_path;
    write_manifest(out_dir_of(out), {line.str()});
    std::cout << "accuracy " << accbuf << " tp=" << cc.tp << " tn=" << cc.tn << " fp=" << cc.fp
              << " fn=" << cc.fn << '\n';
}

void run_full_pipeline(PipelineConfig& cfg, const std::string& method) {
    cfg.run_pca = method != "ard";
    cfg.run_ard = method != "pca";
    std::filesystem::create_directories(cfg.out_dir);
    const std::vector<EvalReport> reports = run_pipeline(cfg);

    const std::string csv_name = "results_" + cfg.route + ".csv";
    const std::string svg_name = "trend_" + cfg.route + ".svg";
    write_report_csv(reports, cfg.out_dir + "/" + csv_name);
    std::vector<std::string> manifest;
    manifest.push_back(csv_name + ": command=pipeline " + describe_config(cfg));
    if (cfg.emit_svg) {
        write_trend_svg(reports, cfg.out_dir + "/" + svg_name);
        manifest.push_back(svg_name + ": command=pipeline " + describe_config(cfg));
    }
    write_manifest(cfg.out_dir, manifest);

    for (const EvalReport& r : reports) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", r.mean_accuracy);
        std::cout << r.preprocessing << " " << r.method << " k=" << r.k << " mean=" << buf << "%\n";
    }
    std::cout << "wrote " << cfg.out_dir << "/" << csv_name << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PCA vs ARD input selection on vibration fault-identification pipelines"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "generate a synthetic dataset CSV");
    gen->set_config("--config");
    std::string gen_dataset;
    std::uint64_t gen_seed = 42;
    std::string gen_out = "dataset.csv";
    GearGenParams gen_gear;
    CylinderGenParams gen_cyl;
    gen->add_option("--dataset", gen_dataset, "gear | cylinder")
        ->required()
        ->check(CLI::IsMember({"gear", "cylinder"}));
    gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output CSV path")->capture_default_str();
    add_gear_options(gen, gen_gear);
    add_cylinder_options(gen, gen_cyl);
    gen->callback([&] { run_generate(gen_dataset, gen_gear, gen_cyl, gen_seed, gen_out); });

    // ---- select ----
    auto* sel = app.add_subcommand("select", "reduce a dataset CSV to k inputs");
    sel->set_config("--config");
    std::string sel_in, sel_method;
    std::size_t sel_k = 10;
    std::uint64_t sel_seed = 1;
    std::size_t sel_hidden = 8;
    ArdOptions sel_ard;
    std::string sel_out = "selected.csv";
    sel->add_option("--in", sel_in, "input dataset CSV")->required();
    sel->add_option("--method", sel_method, "sof | pca | ard")
        ->required()
        ->check(CLI::IsMember({"sof", "pca", "ard"}));
    sel->add_option("--k", sel_k, "inputs to keep")->capture_default_str();
    sel->add_option("--seed", sel_seed, "network init seed (ard)")->capture_default_str();
    sel->add_option("--hidden", sel_hidden, "hidden units (ard)")->capture_default_str();
    sel->add_option("--ard-cycles", sel_ard.cycles, "ARD training cycles")->capture_default_str();
    sel->add_option("--ard-iters", sel_ard.iters_per_cycle, "SCG iterations per ARD cycle")
        ->capture_default_str();
    sel->add_option("--out", sel_out, "output CSV path")->capture_default_str();
    sel->callback([&] { run_select(sel_in, sel_method, sel_k, sel_seed, sel_hidden, sel_ard, sel_out); });

    // ---- train ----
    auto* tr = app.add_subcommand("train", "train a perceptron on a dataset CSV");
    tr->set_config("--config");
    std::string tr_in, tr_out = "network.csv";
    std::size_t tr_hidden = 8, tr_iters = 100;
    double tr_alpha = 1e-3;
    std::uint64_t tr_seed = 1;
    tr->add_option("--in", tr_in, "input dataset CSV")->required();
    tr->add_option("--hidden", tr_hidden, "hidden units")->capture_default_str();
    tr->add_option("--iters", tr_iters, "SCG iterations")->capture_default_str();
    tr->add_option("--alpha", tr_alpha, "uniform weight decay")->capture_default_str();
    tr->add_option("--seed", tr_seed, "init seed")->capture_default_str();
    tr->add_option("--out", tr_out, "output network CSV")->capture_default_str();
    tr->callback([&] { run_train(tr_in, tr_hidden, tr_iters, tr_alpha, tr_seed, tr_out); });

    // ---- evaluate ----
    auto* ev = app.add_subcommand("evaluate", "evaluate a trained network on a dataset CSV");
    ev->set_config("--config");
    std::string ev_in, ev_net, ev_out = "eval.csv";
    ev->add_option("--in", ev_in, "input dataset CSV")->required();
    ev->add_option("--net", ev_net, "network CSV")->required();
    ev->add_option("--out", ev_out, "output CSV path")->capture_default_str();
    ev->callback([&] { run_evaluate(ev_in, ev_net, ev_out); });

    // ---- pipeline ----
    auto* pl = app.add_subcommand("pipeline", "multi-seed PCA vs ARD comparison");
    pl->set_config("--config");
    PipelineConfig cfg;
    std::string pl_method = "both";
    std::string pl_rank_by = "alpha";
    bool pl_cold_start = false;
    bool pl_no_svg = false;
    pl->add_option("--dataset", cfg.dataset, "gear | cylinder | dataset CSV path")
        ->capture_default_str();
    pl->add_option("--route", cfg.route, "sof | time256 | time64 | freq | features62")
        ->required()
        ->check(CLI::IsMember({"sof", "time256", "time64", "freq", "features62"}));
    pl->add_option("--method", pl_method, "pca | ard | both")
        ->capture_default_str()
        ->check(CLI::IsMember({"pca", "ard", "both"}));
    pl->add_option("--k", cfg.k_list, "input counts to evaluate")
        ->delimiter(',')
        ->capture_default_str();
    pl->add_option("--seeds", cfg.seeds, "per-run seeds")->delimiter(',')->capture_default_str();
    pl->add_option("--data-seed", cfg.data_seed, "generator seed")->capture_default_str();
    pl->add_option("--train-frac", cfg.train_frac, "training fraction")->capture_default_str();
    pl->add_option("--sof-keep", cfg.sof_keep, "indices kept by SOF preselection")
        ->capture_default_str();
    pl->add_option("--hidden", cfg.n_hidden, "hidden units")->capture_default_str();
    add_gear_options(pl, cfg.gear);
    add_cylinder_options(pl, cfg.cylinder);
    pl->add_option("--ard-cycles", cfg.ard.cycles, "ARD training cycles")->capture_default_str();
    pl->add_option("--ard-iters", cfg.ard.iters_per_cycle, "SCG iterations per ARD cycle")
        ->capture_default_str();
    pl->add_option("--ard-alpha-init", cfg.ard.alpha_init, "initial prior precision")
        ->capture_default_str();
    pl->add_flag("--cold-start", pl_cold_start, "re-init weights each ARD cycle");
    pl->add_option("--rank-by", pl_rank_by, "alpha | weights")
        ->capture_default_str()
        ->check(CLI::IsMember({"alpha", "weights"}));
    pl->add_option("--final-iters", cfg.final_iters, "SCG iterations for final classifiers")
        ->capture_default_str();
    pl->add_option("--final-alpha", cfg.final_alpha, "weight decay for final classifiers")
        ->capture_default_str();
    pl->add_flag("--ard-rerun-per-k", cfg.ard_rerun_per_k, "retrain ARD on each reduced input set");
    pl->add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    pl->add_flag("--no-svg", pl_no_svg, "skip the trend chart");
    pl->callback([&] {
        cfg.ard.warm_start = !pl_cold_start;
        cfg.ard.rank_by = pl_rank_by == "weights" ? ArdRankBy::weight_magnitude
                                                  : ArdRankBy::posterior_variance;
        cfg.emit_svg = !pl_no_svg;
        run_full_pipeline(cfg, pl_method);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
