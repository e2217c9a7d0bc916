#include "vibsel/pca.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "vibsel/linalg.hpp"

namespace vibsel {

PcaModel fit_pca(const Matrix& data, std::size_t k) {
    if (data.rows() < 2) throw std::invalid_argument("insufficient samples");
    const std::size_t d = data.cols();
    if (k == 0 || k > d || k > data.rows() - 1) throw std::invalid_argument("invalid k");

    const SymMatrix cov = covariance(data);
    const EigenDecomposition eig = sym_eig(cov);

    PcaModel model;
    model.means = column_means(data);
    model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(k));
    model.components = Matrix(d, k);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < d; ++r) model.components(r, c) = eig.vectors(r, c);
    return model;
}

Matrix project(const PcaModel& model, const Matrix& data) {
    const std::size_t d = model.means.size();
    const std::size_t k = model.components.cols();
    if (data.cols() != d) throw std::invalid_argument("dimension mismatch");
    Matrix out(data.rows(), k, 0.0);
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < k; ++c) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += (data(r, j) - model.means[j]) * model.components(j, c);
            out(r, c) = s;
        }
    return out;
}

namespace {

void write_row(std::ofstream& out, const double* vals, std::size_t n) {
    char buf[32];
    for (std::size_t j = 0; j < n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", vals[j]);
        if (j) out << ',';
        out << buf;
    }
    out << '\n';
}

[[noreturn]] void model_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    std::ostringstream msg;
    msg << path << ": parse error at line " << line_no << ": " << what;
    throw std::runtime_error(msg.str());
}

std::vector<double> parse_row(const std::string& line, const std::string& path, std::size_t line_no) {
    std::vector<double> vals;
    std::string_view sv(line);
    while (true) {
        const std::size_t c = sv.find(',');
        const std::string_view tok = sv.substr(0, c);
        double v = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
            model_fail(path, line_no, "bad numeric field");
        if (!std::isfinite(v)) model_fail(path, line_no, "invalid data (non-finite value)");
        vals.push_back(v);
        if (c == std::string_view::npos) break;
        sv = sv.substr(c + 1);
    }
    return vals;
}

}  // namespace

void save_pca(const PcaModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const std::size_t d = model.means.size();
    const std::size_t k = model.eigenvalues.size();
    out << "#pca," << d << ',' << k << '\n';
    write_row(out, model.means.data(), d);
    write_row(out, model.eigenvalues.data(), k);
    std::vector<double> row(k);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < k; ++c) row[c] = model.components(r, c);
        write_row(out, row.data(), k);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

PcaModel load_pca(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);

    std::string line;
    if (!std::getline(in, line) || line.rfind("#pca,", 0) != 0)
        model_fail(path, 1, "missing #pca,D,k header");
    std::size_t dims[2] = {0, 0};
    {
        std::string_view tail(line);
        tail.remove_prefix(5);
        for (int f = 0; f < 2; ++f) {
            const std::size_t c = tail.find(',');
            const std::string_view tok = f == 0 ? tail.substr(0, c) : tail;
            if ((f == 0 && c == std::string_view::npos) || tok.empty())
                model_fail(path, 1, "bad header");
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), dims[f]);
            if (ec != std::errc() || p != tok.data() + tok.size())
                model_fail(path, 1, "bad header");
            if (f == 0) tail = tail.substr(c + 1);
        }
        if (dims[0] == 0 || dims[1] == 0) model_fail(path, 1, "header dimensions must be positive");
    }
    const std::size_t d = dims[0], k = dims[1];

    PcaModel model;
    model.components = Matrix(d, k);
    std::size_t line_no = 1;
    auto next_row = [&](std::size_t want) {
        if (!std::getline(in, line)) model_fail(path, line_no + 1, "unexpected end of file");
        ++line_no;
        std::vector<double> vals = parse_row(line, path, line_no);
        if (vals.size() != want) {
            std::ostringstream what;
            what << "expected " << want << " fields, got " << vals.size();
            model_fail(path, line_no, what.str());
        }
        return vals;
    };
    model.means = next_row(d);
    model.eigenvalues = next_row(k);
    for (std::size_t r = 0; r < d; ++r) {
        const std::vector<double> vals = next_row(k);
        for (std::size_t c = 0; c < k; ++c) model.components(r, c) = vals[c];
    }
    return model;
}

}  // namespace vibsel
