#include "vibsel/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vibsel/features.hpp"
#include "vibsel/rng.hpp"
#include "vibsel/scg.hpp"
#include "vibsel/signal.hpp"

namespace vibsel {
namespace {

// Distinct deterministic streams per (seed, stage); splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kSaltArd = 1;
constexpr std::uint64_t kSaltFinalPca = 100;
constexpr std::uint64_t kSaltFinalArd = 200;
constexpr std::uint64_t kSaltArdChain = 300;

Matrix leading_columns(const Matrix& m, std::size_t k) {
    Matrix out(m.rows(), k);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < k; ++c) out(r, c) = m(r, c);
    return out;
}

Task infer_task(const Matrix& labels) {
    return labels.cols() == 1 ? Task::graded : Task::multilabel;
}

OutputKind output_kind_for(Task task) {
    return task == Task::graded ? OutputKind::linear : OutputKind::logistic;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

Normalization normalize_fit(const Matrix& train) {
    if (train.rows() < 2) throw std::invalid_argument("normalize_fit: insufficient samples");
    Normalization norm;
    norm.means = column_means(train);
    norm.stds.resize(train.cols());
    const double n = static_cast<double>(train.rows());
    for (std::size_t c = 0; c < train.cols(); ++c) {
        double ss = 0.0;
        for (std::size_t r = 0; r < train.rows(); ++r) {
            const double d = train(r, c) - norm.means[c];
            ss += d * d;
        }
        norm.stds[c] = std::sqrt(ss / (n - 1.0));
    }
    return norm;
}

Matrix normalize_apply(const Matrix& data, const Normalization& norm) {
    if (data.cols() != norm.means.size()) throw std::invalid_argument("normalize_apply: dimension mismatch");
    Matrix out(data.rows(), data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < data.cols(); ++c) {
            const double centered = data(r, c) - norm.means[c];
            out(r, c) = norm.stds[c] < 1e-12 ? centered : centered / norm.stds[c];
        }
    return out;
}

SplitResult split(const Dataset& ds, double train_frac, std::uint64_t seed) {
    if (!(train_frac > 0.0 && train_frac < 1.0))
        throw std::invalid_argument("split: train_frac must lie in (0, 1)");

    std::map<std::vector<double>, std::vector<std::size_t>> strata;
    for (std::size_t r = 0; r < ds.labels.rows(); ++r) {
        auto row = ds.labels.row(r);
        strata[std::vector<double>(row.begin(), row.end())].push_back(r);
    }

    Rng rng(seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (auto& [key, rows] : strata) {
        if (rows.size() < 2) throw std::invalid_argument("split: cannot stratify");
        for (std::size_t i = rows.size() - 1; i > 0; --i)
            std::swap(rows[i], rows[rng.index(i + 1)]);
        const double want = std::round(train_frac * static_cast<double>(rows.size()));
        const std::size_t n_train = std::min<std::size_t>(
            rows.size() - 1, std::max<std::size_t>(1, static_cast<std::size_t>(want)));
        train_idx.insert(train_idx.end(), rows.begin(), rows.begin() + n_train);
        test_idx.insert(test_idx.end(), rows.begin() + n_train, rows.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    auto take = [&](const std::vector<std::size_t>& idx) {
        Dataset part;
        part.meta = ds.meta;
        part.inputs = Matrix(idx.size(), ds.inputs.cols());
        part.labels = Matrix(idx.size(), ds.labels.cols());
        for (std::size_t r = 0; r < idx.size(); ++r) {
            auto xi = ds.inputs.row(idx[r]);
            auto yi = ds.labels.row(idx[r]);
            std::copy(xi.begin(), xi.end(), part.inputs.row(r).begin());
            std::copy(yi.begin(), yi.end(), part.labels.row(r).begin());
        }
        return part;
    };
    return {take(train_idx), take(test_idx)};
}

Matrix classify(const Matrix& outputs, Task task) {
    Matrix pred(outputs.rows(), outputs.cols());
    for (std::size_t r = 0; r < outputs.rows(); ++r)
        for (std::size_t c = 0; c < outputs.cols(); ++c) {
            const double v = outputs(r, c);
            if (task == Task::multilabel)
                pred(r, c) = v >= 0.5 ? 1.0 : 0.0;
            else
                pred(r, c) = v < 0.25 ? 0.0 : (v < 0.75 ? 0.5 : 1.0);
        }
    return pred;
}

ConfusionCounts confusion(const Matrix& pred, const Matrix& truth, Task task) {
    if (pred.rows() != truth.rows() || pred.cols() != truth.cols())
        throw std::invalid_argument("confusion: shape mismatch");
    if (task == Task::graded && truth.cols() != 1)
        throw std::invalid_argument("confusion: shape mismatch");

    ConfusionCounts cc;
    if (task == Task::multilabel) {
        for (std::size_t r = 0; r < pred.rows(); ++r)
            for (std::size_t c = 0; c < pred.cols(); ++c) {
                const bool t = truth(r, c) >= 0.5;
                const bool p = pred(r, c) >= 0.5;
                if (t && p) ++cc.tp;
                else if (!t && !p) ++cc.tn;
                else if (!t && p) ++cc.fp;
                else ++cc.fn;
            }
        return cc;
    }
    for (std::size_t r = 0; r < pred.rows(); ++r) {
        const double t = truth(r, 0);
        const double p = pred(r, 0);
        if (t > 0.0 && p == t) ++cc.tp;
        else if (t == 0.0 && p == 0.0) ++cc.tn;
        else if (t == 0.0 && p > 0.0) ++cc.fp;
        else if (t > 0.0 && p == 0.0) ++cc.fn;
        // wrong nonzero severity on a faulty example: no bucket, accuracy-only
    }
    return cc;
}

double accuracy_percent(const Matrix& pred, const Matrix& truth, Task task) {
    if (pred.rows() != truth.rows() || pred.cols() != truth.cols())
        throw std::invalid_argument("accuracy: shape mismatch");
    std::size_t correct = 0, total = 0;
    if (task == Task::multilabel) {
        for (std::size_t r = 0; r < pred.rows(); ++r)
            for (std::size_t c = 0; c < pred.cols(); ++c, ++total)
                if ((pred(r, c) >= 0.5) == (truth(r, c) >= 0.5)) ++correct;
    } else {
        for (std::size_t r = 0; r < pred.rows(); ++r, ++total)
            if (pred(r, 0) == truth(r, 0)) ++correct;
    }
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

namespace {

// Row 0 runs serially so that precondition failures surface as ordinary
// exceptions instead of aborting inside the parallel region.
template <typename PerRow>
Matrix transform_rows(const Matrix& raw, std::size_t out_cols, const PerRow& per_row) {
    Matrix out(raw.rows(), out_cols);
    if (raw.rows() == 0) return out;
    per_row(raw.row(0), out.row(0));
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t r = 1; r < static_cast<std::ptrdiff_t>(raw.rows()); ++r)
        per_row(raw.row(static_cast<std::size_t>(r)), out.row(static_cast<std::size_t>(r)));
    return out;
}

}  // namespace

Matrix route_transform(const Matrix& raw, const std::string& route) {
    if (route == "sof") return raw;
    if (route == "time256" || route == "time64") {
        const std::size_t target = route == "time256" ? 256 : 64;
        return transform_rows(raw, target,
                              [&](std::span<const double> in, std::span<double> row) {
                                  auto d = decimate(in, target);
                                  std::copy(d.begin(), d.end(), row.begin());
                              });
    }
    if (route == "freq") {
        return transform_rows(raw, 128, [&](std::span<const double> in, std::span<double> row) {
            Spectrum s = dft_magnitude(decimate(in, 256));
            std::copy(s.magnitudes.begin(), s.magnitudes.end(), row.begin());
        });
    }
    if (route == "features62") {
        const FeatureConfig fc;
        return transform_rows(raw, fc.total(),
                              [&](std::span<const double> in, std::span<double> row) {
                                  auto f = feature_vector(in, fc);
                                  std::copy(f.begin(), f.end(), row.begin());
                              });
    }
    throw std::invalid_argument("unknown route: " + route);
}

FittedSelection fit_selection(const Matrix& train_inputs, const Matrix& train_labels,
                              const PipelineConfig& cfg, std::uint64_t seed) {
    FittedSelection sel;
    Matrix x = train_inputs;

    if (cfg.route == "sof") {
        std::vector<std::vector<double>> healthy, damaged;
        for (std::size_t r = 0; r < train_inputs.rows(); ++r) {
            auto lab = train_labels.row(r);
            const bool all_zero =
                std::all_of(lab.begin(), lab.end(), [](double v) { return v == 0.0; });
            auto xi = train_inputs.row(r);
            (all_zero ? healthy : damaged).emplace_back(xi.begin(), xi.end());
        }
        SofRanking ranking = rank_by_sof(Matrix::from_rows(healthy), Matrix::from_rows(damaged),
                                         std::min(cfg.sof_keep, train_inputs.cols()));
        sel.sof_selected = ranking.selected;
        x = select_columns(train_inputs, sel.sof_selected, sel.sof_selected.size());
    }

    sel.norm = normalize_fit(x);
    const Matrix xn = normalize_apply(x, sel.norm);
    const std::size_t kmax = *std::max_element(cfg.k_list.begin(), cfg.k_list.end());

    if (cfg.run_pca) {
        sel.has_pca = true;
        sel.pca = fit_pca(xn, kmax);
        const Matrix proj = project(sel.pca, xn);
        sel.pca_norm = normalize_fit(proj);
    }
    if (cfg.run_ard) {
        sel.has_ard = true;
        const Task task = infer_task(train_labels);
        const Layout layout{xn.cols(), cfg.n_hidden, train_labels.cols(), output_kind_for(task)};
        sel.ard = ard_train(xn, train_labels, layout, cfg.ard, derive_seed(seed, kSaltArd)).second;
        sel.ard_order = sel.ard.relevance;
    }
    return sel;
}

namespace {

struct CellResult {
    double accuracy = 0.0;
    ConfusionCounts confusion;
};

CellResult run_cell(const Matrix& train_x, const Matrix& train_y, const Matrix& test_x,
                    const Matrix& test_y, const PipelineConfig& cfg, std::uint64_t net_seed) {
    const Task task = infer_task(train_y);
    const Layout layout{train_x.cols(), cfg.n_hidden, train_y.cols(), output_kind_for(task)};
    const std::vector<double> alphas(layout.group_count(), cfg.final_alpha);

    const auto objective = [&](const std::vector<double>& w, std::vector<double>& g) {
        Network net(layout, w);
        ErrorGrad eg = regularized_error_grad(net, train_x, train_y, alphas);
        g = std::move(eg.grad);
        return eg.error;
    };
    ScgOptions opts = cfg.ard.scg;
    opts.max_iters = cfg.final_iters;
    ScgResult fit = scg_minimize(objective, init_network(layout, net_seed).params(), opts);

    const Network net(layout, fit.w);
    const Matrix pred = classify(net.forward_batch(test_x), task);
    CellResult cell;
    cell.accuracy = accuracy_percent(pred, test_y, task);
    cell.confusion = confusion(pred, test_y, task);
    return cell;
}

void validate_config(const PipelineConfig& cfg, std::size_t post_route_dim) {
    if (cfg.seeds.empty()) throw std::invalid_argument("seeds must be nonempty");
    if (cfg.k_list.empty()) throw std::invalid_argument("k list must be nonempty");
    for (std::size_t k : cfg.k_list) {
        if (k == 0) throw std::invalid_argument("invalid k: 0");
        if (k > post_route_dim) {
            std::ostringstream msg;
            msg << "invalid k: " << k << " exceeds route dimension " << post_route_dim;
            throw std::invalid_argument(msg.str());
        }
    }
    if (!cfg.run_pca && !cfg.run_ard) throw std::invalid_argument("no method selected");
    if (cfg.n_hidden == 0) throw std::invalid_argument("invalid hyperparameter: n_hidden");
    if (!(cfg.final_alpha >= 0.0) || cfg.final_iters == 0)
        throw std::invalid_argument("invalid hyperparameter: final training");
}

}  // namespace

std::vector<EvalReport> run_pipeline(const PipelineConfig& cfg) {
    Dataset ds;
    if (cfg.dataset == "gear")
        ds = generate_gear(cfg.gear, cfg.data_seed);
    else if (cfg.dataset == "cylinder")
        ds = generate_cylinder(cfg.cylinder, cfg.data_seed);
    else
        ds = load_csv(cfg.dataset);

    Dataset routed;
    routed.meta = ds.meta;
    routed.labels = ds.labels;
    routed.inputs = route_transform(ds.inputs, cfg.route);
    const std::size_t post_dim =
        cfg.route == "sof" ? std::min(cfg.sof_keep, routed.inputs.cols()) : routed.inputs.cols();
    validate_config(cfg, post_dim);

    const Task task = infer_task(routed.labels);

    // report slots: PCA cells first, then ARD, each in k_list order
    std::vector<EvalReport> reports;
    for (int m = 0; m < 2; ++m) {
        if ((m == 0 && !cfg.run_pca) || (m == 1 && !cfg.run_ard)) continue;
        for (std::size_t k : cfg.k_list) {
            EvalReport rep;
            rep.method = m == 0 ? "pca" : "ard";
            rep.preprocessing = cfg.route;
            rep.k = k;
            reports.push_back(std::move(rep));
        }
    }
    auto report_at = [&](const std::string& method, std::size_t k) -> EvalReport& {
        for (EvalReport& r : reports)
            if (r.method == method && r.k == k) return r;
        throw std::logic_error("missing report slot");
    };

    for (std::uint64_t seed : cfg.seeds) {
        SplitResult sp = split(routed, cfg.train_frac, seed);
        FittedSelection sel = fit_selection(sp.train.inputs, sp.train.labels, cfg, seed);

        Matrix train_x = sp.train.inputs;
        Matrix test_x = sp.test.inputs;
        if (cfg.route == "sof") {
            train_x = select_columns(train_x, sel.sof_selected, sel.sof_selected.size());
            test_x = select_columns(test_x, sel.sof_selected, sel.sof_selected.size());
        }
        const Matrix train_n = normalize_apply(train_x, sel.norm);
        const Matrix test_n = normalize_apply(test_x, sel.norm);

        if (cfg.run_pca) {
            const Matrix train_p = normalize_apply(project(sel.pca, train_n), sel.pca_norm);
            const Matrix test_p = normalize_apply(project(sel.pca, test_n), sel.pca_norm);
            for (std::size_t k : cfg.k_list) {
                CellResult cell =
                    run_cell(leading_columns(train_p, k), sp.train.labels, leading_columns(test_p, k),
                             sp.test.labels, cfg, derive_seed(seed, kSaltFinalPca + k));
                EvalReport& rep = report_at("pca", k);
                rep.seed_accuracies.push_back(cell.accuracy);
                rep.confusion.tp += cell.confusion.tp;
                rep.confusion.tn += cell.confusion.tn;
                rep.confusion.fp += cell.confusion.fp;
                rep.confusion.fn += cell.confusion.fn;
            }
        }
        if (cfg.run_ard) {
            // The ordering is truncated for every k from one converged run; in
            // rerun mode ARD is retrained on each reduced input set, largest k
            // first, and the next cut uses the retrained ranking.
            std::vector<std::size_t> ks = cfg.k_list;
            std::sort(ks.begin(), ks.end(), std::greater<>());
            std::vector<std::size_t> pool(train_n.cols());
            for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
            std::vector<std::size_t> order = sel.ard_order;  // indices into pool

            for (std::size_t k : ks) {
                std::vector<std::size_t> chosen(k);
                for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[order[i]];
                const Matrix train_k = select_columns(train_n, chosen, k);
                const Matrix test_k = select_columns(test_n, chosen, k);
                CellResult cell = run_cell(train_k, sp.train.labels, test_k, sp.test.labels, cfg,
                                           derive_seed(seed, kSaltFinalArd + k));
                EvalReport& rep = report_at("ard", k);
                rep.seed_accuracies.push_back(cell.accuracy);
                rep.confusion.tp += cell.confusion.tp;
                rep.confusion.tn += cell.confusion.tn;
                rep.confusion.fp += cell.confusion.fp;
                rep.confusion.fn += cell.confusion.fn;

                if (cfg.ard_rerun_per_k && k != ks.back()) {
                    const Layout layout{k, cfg.n_hidden, sp.train.labels.cols(), output_kind_for(task)};
                    pool = chosen;
                    order = ard_train(train_k, sp.train.labels, layout, cfg.ard,
                                      derive_seed(seed, kSaltArdChain + k))
                                .second.relevance;
                }
            }
        }
    }

    for (EvalReport& rep : reports) {
        double sum = 0.0;
        for (double a : rep.seed_accuracies) sum += a;
        rep.mean_accuracy = sum / static_cast<double>(rep.seed_accuracies.size());
    }
    return reports;
}

void write_report_csv(const std::vector<EvalReport>& reports, const std::string& path) {
    if (reports.empty()) throw std::invalid_argument("no reports to write");
    std::vector<std::size_t> ks;
    for (const EvalReport& r : reports)
        if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
    const bool has_pca = std::any_of(reports.begin(), reports.end(),
                                     [](const EvalReport& r) { return r.method == "pca"; });
    const bool has_ard = std::any_of(reports.begin(), reports.end(),
                                     [](const EvalReport& r) { return r.method == "ard"; });

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "Number of inputs";
    if (has_pca) out << ",PCA Classification";
    if (has_ard) out << ",ARD Classification";
    out << '\n';

    auto find = [&](const std::string& method, std::size_t k) -> const EvalReport* {
        for (const EvalReport& r : reports)
            if (r.method == method && r.k == k) return &r;
        return nullptr;
    };
    char buf[32];
    for (std::size_t k : ks) {
        out << k;
        for (const char* method : {"pca", "ard"}) {
            if ((method[0] == 'p' && !has_pca) || (method[0] == 'a' && !has_ard)) continue;
            const EvalReport* r = find(method, k);
            if (r == nullptr) {
                out << ',';
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.2f", r->mean_accuracy);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trend_svg(const std::vector<EvalReport>& reports, const std::string& path) {
    if (reports.empty()) throw std::invalid_argument("no reports to plot");
    std::vector<std::size_t> ks;
    for (const EvalReport& r : reports)
        if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
    std::sort(ks.begin(), ks.end());

    const double xl = 70, xr = 600, yt = 40, yb = 360;
    const double kmin = static_cast<double>(ks.front());
    const double kmax = static_cast<double>(ks.back());
    auto xpos = [&](std::size_t k) {
        if (ks.size() == 1) return (xl + xr) / 2;
        return xl + (static_cast<double>(k) - kmin) / (kmax - kmin) * (xr - xl);
    };
    auto ypos = [&](double acc) { return yb - acc / 100.0 * (yb - yt); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"420\" fill=\"white\"/>\n"
        << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << reports.front().preprocessing << " route: test accuracy vs number of inputs</text>\n";

    char buf[64];
    for (int acc = 0; acc <= 100; acc += 20) {
        const double y = ypos(acc);
        std::snprintf(buf, sizeof buf, "%.1f", y);
        svg << "<line x1=\"" << xl << "\" y1=\"" << buf << "\" x2=\"" << xr << "\" y2=\"" << buf
            << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << xl - 8 << "\" y=\"" << buf
            << "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << acc << "</text>\n";
    }
    for (std::size_t k : ks) {
        std::snprintf(buf, sizeof buf, "%.1f", xpos(k));
        svg << "<line x1=\"" << buf << "\" y1=\"" << yb << "\" x2=\"" << buf << "\" y2=\"" << yb + 5
            << "\" stroke=\"#333333\"/>\n"
            << "<text x=\"" << buf << "\" y=\"" << yb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << k
            << "</text>\n";
    }
    svg << "<line x1=\"" << xl << "\" y1=\"" << yb << "\" x2=\"" << xr << "\" y2=\"" << yb
        << "\" stroke=\"#333333\"/>\n"
        << "<line x1=\"" << xl << "\" y1=\"" << yt << "\" x2=\"" << xl << "\" y2=\"" << yb
        << "\" stroke=\"#333333\"/>\n"
        << "<text x=\"335\" y=\"400\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">number of inputs</text>\n";

    const char* colors[2] = {"#1f6fb4", "#c23b22"};
    const char* names[2] = {"pca", "ard"};
    for (int m = 0; m < 2; ++m) {
        std::vector<std::pair<std::size_t, double>> pts;
        for (std::size_t k : ks)
            for (const EvalReport& r : reports)
                if (r.method == names[m] && r.k == k) pts.push_back({k, r.mean_accuracy});
        if (pts.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << colors[m] << "\" stroke-width=\"2\" points=\"";
        for (auto& [k, acc] : pts) {
            std::snprintf(buf, sizeof buf, "%.1f,%.1f ", xpos(k), ypos(acc));
            svg << buf;
        }
        svg << "\"/>\n";
        for (auto& [k, acc] : pts) {
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"4\" fill=\"%s\"/>\n",
                          xpos(k), ypos(acc), colors[m]);
            svg << buf;
        }
        svg << "<rect x=\"" << xr - 110 << "\" y=\"" << yt + 18 * m << "\" width=\"12\" height=\"12\" fill=\""
            << colors[m] << "\"/>\n"
            << "<text x=\"" << xr - 92 << "\" y=\"" << yt + 18 * m + 10
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << (m == 0 ? "PCA" : "ARD") << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << svg.str();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string describe_config(const PipelineConfig& cfg) {
    std::ostringstream s;
    s << "dataset=" << cfg.dataset << " route=" << cfg.route << " method="
      << (cfg.run_pca && cfg.run_ard ? "both" : (cfg.run_pca ? "pca" : "ard"));
    s << " k=";
    for (std::size_t i = 0; i < cfg.k_list.size(); ++i) s << (i ? "," : "") << cfg.k_list[i];
    s << " seeds=";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) s << (i ? "," : "") << cfg.seeds[i];
    s << " data_seed=" << cfg.data_seed << " train_frac=" << format_double(cfg.train_frac)
      << " sof_keep=" << cfg.sof_keep << " hidden=" << cfg.n_hidden
      << " revs_per_class=" << cfg.gear.revs_per_class
      << " points_per_rev=" << cfg.gear.points_per_rev << " mesh_order=" << cfg.gear.mesh_order
      << " gear_noise_std=" << format_double(cfg.gear.noise_std)
      << " severity_gain=" << format_double(cfg.gear.severity_gain)
      << " cyl_inputs=" << cfg.cylinder.n_inputs
      << " cyl_noise_std=" << format_double(cfg.cylinder.noise_std)
      << " signature_strength=" << format_double(cfg.cylinder.signature_strength)
      << " scale_jitter=" << format_double(cfg.cylinder.scale_jitter)
      << " shape_jitter=" << format_double(cfg.cylinder.shape_jitter)
      << " ard_cycles=" << cfg.ard.cycles << " ard_iters=" << cfg.ard.iters_per_cycle
      << " alpha_init=" << format_double(cfg.ard.alpha_init)
      << " warm_start=" << (cfg.ard.warm_start ? 1 : 0) << " rank_by="
      << (cfg.ard.rank_by == ArdRankBy::posterior_variance ? "alpha" : "weights")
      << " final_iters=" << cfg.final_iters << " final_alpha=" << format_double(cfg.final_alpha)
      << " ard_rerun_per_k=" << (cfg.ard_rerun_per_k ? 1 : 0)
      << " svg=" << (cfg.emit_svg ? 1 : 0);
    return s.str();
}

}  // namespace vibsel
