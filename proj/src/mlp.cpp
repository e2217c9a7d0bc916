#include "vibsel/mlp.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <cmath>
#include <stdexcept>

#include "vibsel/rng.hpp"

namespace vibsel {

namespace {

double logistic(double a) { return 1.0 / (1.0 + std::exp(-a)); }

void check_layout(const Layout& l) {
    if (l.n_in == 0 || l.n_hidden == 0 || l.n_out == 0) throw std::invalid_argument("invalid layout");
}

constexpr double kProbEps = 1e-12;  // keeps cross-entropy logs finite

}  // namespace

Network::Network(Layout layout, std::vector<double> params) : layout_(layout), params_(std::move(params)) {
    check_layout(layout_);
    if (params_.size() != layout_.param_count()) throw std::invalid_argument("dimension mismatch");
    w2_off_ = layout_.n_in * layout_.n_hidden + layout_.n_hidden;
    b2_off_ = w2_off_ + layout_.n_hidden * layout_.n_out;
}

std::pair<std::size_t, std::size_t> Network::group_range(std::size_t c) const {
    const std::size_t h = layout_.n_hidden;
    if (c < layout_.n_in) return {c * h, (c + 1) * h};
    if (c == layout_.n_in) return {layout_.n_in * h, layout_.n_in * h + h};
    if (c == layout_.n_in + 1) return {w2_off_, b2_off_};
    if (c == layout_.n_in + 2) return {b2_off_, b2_off_ + layout_.n_out};
    throw std::invalid_argument("invalid group");
}

std::vector<double> Network::forward(std::span<const double> x) const {
    if (x.size() != layout_.n_in) throw std::invalid_argument("dimension mismatch");
    std::vector<double> z(layout_.n_hidden);
    for (std::size_t h = 0; h < layout_.n_hidden; ++h) {
        double u = b1(h);
        for (std::size_t i = 0; i < layout_.n_in; ++i) u += w1(i, h) * x[i];
        z[h] = std::tanh(u);
    }
    std::vector<double> y(layout_.n_out);
    for (std::size_t o = 0; o < layout_.n_out; ++o) {
        double a = b2(o);
        for (std::size_t h = 0; h < layout_.n_hidden; ++h) a += w2(h, o) * z[h];
        y[o] = layout_.output_kind == OutputKind::logistic ? logistic(a) : a;
    }
    return y;
}

Matrix Network::forward_batch(const Matrix& inputs) const {
    Matrix out(inputs.rows(), layout_.n_out);
    for (std::size_t r = 0; r < inputs.rows(); ++r) {
        const std::vector<double> y = forward(inputs.row(r));
        std::copy(y.begin(), y.end(), out.data() + r * layout_.n_out);
    }
    return out;
}

Network init_network(const Layout& layout, std::uint64_t seed) {
    check_layout(layout);
    Rng rng(seed);
    std::vector<double> params(layout.param_count());
    const double s1 = 1.0 / std::sqrt(static_cast<double>(layout.n_in));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(layout.n_hidden));
    std::size_t p = 0;
    for (std::size_t i = 0; i < layout.n_in * layout.n_hidden; ++i) params[p++] = s1 * rng.gaussian();
    for (std::size_t i = 0; i < layout.n_hidden; ++i) params[p++] = s1 * rng.gaussian();
    for (std::size_t i = 0; i < layout.n_hidden * layout.n_out; ++i) params[p++] = s2 * rng.gaussian();
    for (std::size_t i = 0; i < layout.n_out; ++i) params[p++] = s2 * rng.gaussian();
    return Network(layout, std::move(params));
}

namespace {

void check_batch(const Network& net, const Matrix& inputs, const Matrix& targets) {
    const Layout& l = net.layout();
    if (inputs.cols() != l.n_in || targets.cols() != l.n_out || inputs.rows() != targets.rows())
        throw std::invalid_argument("shape mismatch");
    if (l.output_kind == OutputKind::logistic) {
        for (std::size_t r = 0; r < targets.rows(); ++r)
            for (std::size_t o = 0; o < targets.cols(); ++o)
                if (targets(r, o) < 0.0 || targets(r, o) > 1.0) throw std::invalid_argument("invalid target");
    }
}

// error and gradient contribution of one example, added into acc
double example_error_grad(const Network& net, std::span<const double> x, std::span<const double> t,
                          std::vector<double>& acc, std::vector<double>& z, std::vector<double>& dh) {
    const Layout& l = net.layout();
    for (std::size_t h = 0; h < l.n_hidden; ++h) {
        double u = net.b1(h);
        for (std::size_t i = 0; i < l.n_in; ++i) u += net.w1(i, h) * x[i];
        z[h] = std::tanh(u);
    }
    const std::size_t w2_off = l.n_in * l.n_hidden + l.n_hidden;
    const std::size_t b2_off = w2_off + l.n_hidden * l.n_out;

    double err = 0.0;
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t o = 0; o < l.n_out; ++o) {
        double a = net.b2(o);
        for (std::size_t h = 0; h < l.n_hidden; ++h) a += net.w2(h, o) * z[h];
        double delta;
        if (l.output_kind == OutputKind::logistic) {
            const double y = logistic(a);
            const double yc = std::clamp(y, kProbEps, 1.0 - kProbEps);
            err -= t[o] * std::log(yc) + (1.0 - t[o]) * std::log(1.0 - yc);
            delta = y - t[o];
        } else {
            const double d = a - t[o];
            err += 0.5 * d * d;
            delta = d;
        }
        for (std::size_t h = 0; h < l.n_hidden; ++h) {
            acc[w2_off + h * l.n_out + o] += z[h] * delta;
            dh[h] += net.w2(h, o) * delta;
        }
        acc[b2_off + o] += delta;
    }
    for (std::size_t h = 0; h < l.n_hidden; ++h) {
        const double d = (1.0 - z[h] * z[h]) * dh[h];
        for (std::size_t i = 0; i < l.n_in; ++i) acc[i * l.n_hidden + h] += x[i] * d;
        acc[l.n_in * l.n_hidden + h] += d;
    }
    return err;
}

constexpr std::size_t kBlock = 32;

}  // namespace

ErrorGrad data_error_grad(const Network& net, const Matrix& inputs, const Matrix& targets) {
    check_batch(net, inputs, targets);
    const std::size_t n = inputs.rows();
    const std::size_t p = net.param_count();
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;

    // fixed-size example blocks accumulated independently, then combined in
    // block order; the result is the same for any thread count
    std::vector<double> block_err(n_blocks, 0.0);
    Matrix block_grad(n_blocks, p, 0.0);
#pragma omp parallel
    {
        std::vector<double> z(net.layout().n_hidden), dh(net.layout().n_hidden);
        std::vector<double> acc(p);
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t hi = std::min(lo + kBlock, n);
            std::fill(acc.begin(), acc.end(), 0.0);
            double err = 0.0;
            for (std::size_t r = lo; r < hi; ++r)
                err += example_error_grad(net, inputs.row(r), targets.row(r), acc, z, dh);
            block_err[static_cast<std::size_t>(b)] = err;
            std::copy(acc.begin(), acc.end(), block_grad.data() + static_cast<std::size_t>(b) * p);
        }
    }

    ErrorGrad out;
    out.grad.assign(p, 0.0);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        out.error += block_err[b];
        const double* g = block_grad.data() + b * p;
        for (std::size_t i = 0; i < p; ++i) out.grad[i] += g[i];
    }
    return out;
}

ErrorGrad data_error_grad_serial(const Network& net, const Matrix& inputs, const Matrix& targets) {
    check_batch(net, inputs, targets);
    ErrorGrad out;
    out.grad.assign(net.param_count(), 0.0);
    std::vector<double> z(net.layout().n_hidden), dh(net.layout().n_hidden);
    for (std::size_t r = 0; r < inputs.rows(); ++r)
        out.error += example_error_grad(net, inputs.row(r), targets.row(r), out.grad, z, dh);
    return out;
}

ErrorGrad regularized_error_grad(const Network& net, const Matrix& inputs, const Matrix& targets,
                                 std::span<const double> alphas) {
    if (alphas.size() != net.layout().group_count()) throw std::invalid_argument("invalid hyperparameter");
    for (double a : alphas)
        if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("invalid hyperparameter");

    ErrorGrad out = data_error_grad(net, inputs, targets);
    for (std::size_t c = 0; c < alphas.size(); ++c) {
        const auto [lo, hi] = net.group_range(c);
        double ss = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double w = net.params()[i];
            ss += w * w;
            out.grad[i] += alphas[c] * w;
        }
        out.error += 0.5 * alphas[c] * ss;
    }
    return out;
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const Layout& l = net.layout();
    out << "#mlp," << l.n_in << ',' << l.n_hidden << ',' << l.n_out << ','
        << (l.output_kind == OutputKind::logistic ? "logistic" : "linear") << '\n';
    char buf[32];
    for (double p : net.params()) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("#mlp,", 0) != 0)
        throw std::runtime_error(path + ": missing #mlp header");
    Layout layout;
    {
        std::string_view sv(line);
        sv.remove_prefix(5);
        std::size_t vals[3];
        for (auto& v : vals) {
            const std::size_t c = sv.find(',');
            if (c == std::string_view::npos) throw std::runtime_error(path + ": bad #mlp header");
            auto [p, ec] = std::from_chars(sv.data(), sv.data() + c, v);
            if (ec != std::errc() || p != sv.data() + c)
                throw std::runtime_error(path + ": bad #mlp header");
            sv = sv.substr(c + 1);
        }
        layout.n_in = vals[0];
        layout.n_hidden = vals[1];
        layout.n_out = vals[2];
        if (sv == "logistic")
            layout.output_kind = OutputKind::logistic;
        else if (sv == "linear")
            layout.output_kind = OutputKind::linear;
        else
            throw std::runtime_error(path + ": bad output kind");
    }
    std::vector<double> params;
    params.reserve(layout.param_count());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double v = 0.0;
        auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc() || p != line.data() + line.size() || !std::isfinite(v)) {
            std::ostringstream msg;
            msg << path << ": parse error at line " << line_no;
            throw std::runtime_error(msg.str());
        }
        params.push_back(v);
    }
    if (params.size() != layout.param_count())
        throw std::runtime_error(path + ": parameter count does not match layout");
    return Network(layout, std::move(params));
}

}  // namespace vibsel
