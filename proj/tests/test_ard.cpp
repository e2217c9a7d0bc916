// Evidence re-estimation and relevance ranking. The re-estimation update is
// checked against a hand-built Gauss-Newton Hessian on the smallest network
// (four parameters, one per group), inverted here by Gauss-Jordan so the
// production Cholesky path never touches the expected values.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vibsel/ard.hpp"
#include "vibsel/matrix.hpp"
#include "vibsel/mlp.hpp"
#include "vibsel/rng.hpp"

using namespace vibsel;

namespace {

// plain Gauss-Jordan inverse for the 4x4 oracle matrices
std::vector<std::vector<double>> gauss_jordan_inverse(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

struct ToyOracle {
    std::vector<double> alphas;
    std::vector<double> gammas;
};

// Expected evidence update for the 1-1-1 network: J rows are the output
// preactivation gradients [w2 (1-z^2) x, w2 (1-z^2), z, 1], scaled by
// sqrt(y(1-y)) for a logistic output.
ToyOracle toy_update(const Network& net, const std::vector<double>& xs,
                     const std::vector<double>& alphas) {
    const double w1 = net.params()[0], b1 = net.params()[1];
    const double w2 = net.params()[2], b2 = net.params()[3];
    const bool logistic = net.layout().output_kind == OutputKind::logistic;

    std::vector<std::vector<double>> a(4, std::vector<double>(4, 0.0));
    for (double x : xs) {
        const double z = std::tanh(b1 + w1 * x);
        double scale = 1.0;
        if (logistic) {
            const double y = 1.0 / (1.0 + std::exp(-(b2 + w2 * z)));
            scale = std::sqrt(y * (1.0 - y));
        }
        const double row[4] = {scale * w2 * (1.0 - z * z) * x, scale * w2 * (1.0 - z * z),
                               scale * z, scale};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a[i][j] += row[i] * row[j];
    }
    for (std::size_t i = 0; i < 4; ++i) a[i][i] += alphas[i];
    const std::vector<std::vector<double>> inv = gauss_jordan_inverse(a);

    ToyOracle out;
    for (std::size_t c = 0; c < 4; ++c) {
        double gamma = 1.0 - alphas[c] * inv[c][c];
        gamma = std::clamp(gamma, 0.0, 1.0);
        const double w = net.params()[c];
        const double e_w = 0.5 * w * w;
        out.gammas.push_back(gamma);
        out.alphas.push_back(e_w < 1e-12 ? kAlphaMax
                                         : std::clamp(gamma / (2.0 * e_w), kAlphaMin, kAlphaMax));
    }
    return out;
}

struct RelevanceRun {
    std::vector<double> alphas;
    std::vector<std::size_t> relevance;
};

// Regression experiment: 200 examples, inputs 0..4 drive the target with
// distinct coefficients, inputs 5..9 are pure noise. Coefficients keep the
// target spread near 1 so the tanh units work in their responsive range.
RelevanceRun relevance_experiment(std::uint64_t seed, double alpha_init) {
    Rng rng(seed * 7919 + 1);
    const std::size_t n = 200, d = 10;
    const double coef[5] = {1.0, -0.75, 0.6, -0.45, 0.35};
    Matrix x(n, d);
    Matrix t(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            x(r, c) = rng.gaussian();
            if (c < 5) sum += coef[c] * x(r, c);
        }
        t(r, 0) = sum + 0.05 * rng.gaussian();
    }
    const Layout layout{d, 8, 1, OutputKind::linear};
    ArdOptions opts;
    opts.alpha_init = alpha_init;
    auto [net, state] = ard_train(x, t, layout, opts, seed);
    return {state.alphas, state.relevance};
}

}  // namespace

TEST_CASE("reestimate_alphas matches the hand-built Hessian oracle, linear output") {
    const Layout layout{1, 1, 1, OutputKind::linear};
    const Network net(layout, {0.8, -0.3, 1.1, 0.4});
    const std::vector<double> xs = {0.5, -1.0, 2.0, 0.25, -0.75};
    Matrix inputs(xs.size(), 1);
    for (std::size_t r = 0; r < xs.size(); ++r) inputs(r, 0) = xs[r];
    const Matrix targets(xs.size(), 1, 0.0);
    const std::vector<double> alphas = {0.2, 0.5, 0.1, 0.3};

    const auto [new_alphas, gammas] = reestimate_alphas(net, inputs, targets, alphas);
    const ToyOracle expect = toy_update(net, xs, alphas);
    for (std::size_t c = 0; c < 4; ++c) {
        CAPTURE(c);
        CHECK(nearly_equal(gammas[c], expect.gammas[c], 1e-6));
        CHECK(nearly_equal(new_alphas[c], expect.alphas[c], 1e-6));
    }
}

TEST_CASE("reestimate_alphas matches the hand-built Hessian oracle, logistic output") {
    const Layout layout{1, 1, 1, OutputKind::logistic};
    const Network net(layout, {0.6, 0.2, -0.9, 0.1});
    const std::vector<double> xs = {1.5, -0.5, 0.75, -2.0};
    Matrix inputs(xs.size(), 1);
    for (std::size_t r = 0; r < xs.size(); ++r) inputs(r, 0) = xs[r];
    const Matrix targets(xs.size(), 1, 1.0);
    const std::vector<double> alphas = {0.4, 0.4, 0.4, 0.4};

    const auto [new_alphas, gammas] = reestimate_alphas(net, inputs, targets, alphas);
    const ToyOracle expect = toy_update(net, xs, alphas);
    for (std::size_t c = 0; c < 4; ++c) {
        CAPTURE(c);
        CHECK(nearly_equal(gammas[c], expect.gammas[c], 1e-6));
        CHECK(nearly_equal(new_alphas[c], expect.alphas[c], 1e-6));
    }
}

TEST_CASE("a group with vanished weights clamps to the maximum alpha") {
    const Layout layout{1, 1, 1, OutputKind::linear};
    const Network net(layout, {0.8, 0.0, 1.1, 0.4});  // b1 exactly zero
    Matrix inputs(3, 1);
    inputs(0, 0) = 1.0;
    inputs(1, 0) = -1.0;
    inputs(2, 0) = 0.5;
    const auto [new_alphas, gammas] =
        reestimate_alphas(net, inputs, Matrix(3, 1, 0.0), std::vector<double>{0.1, 0.1, 0.1, 0.1});
    CHECK(new_alphas[1] == kAlphaMax);
    CHECK(gammas[1] >= 0.0);
}

TEST_CASE("well-determined groups approach gamma = group size") {
    // the data term must dominate the prior in every Hessian direction, so
    // use a tiny alpha, plenty of samples, and inputs that swing the hidden
    // unit through its whole range
    const Layout layout{1, 1, 1, OutputKind::linear};
    const Network net(layout, {0.3, 0.1, 1.3, 0.5});
    Rng rng(13);
    const std::size_t n = 200;
    Matrix inputs(n, 1);
    for (std::size_t r = 0; r < n; ++r) inputs(r, 0) = -20.0 + 40.0 * rng.uniform();
    const std::vector<double> alphas = {1e-3, 1e-3, 1e-3, 1e-3};
    const auto [new_alphas, gammas] = reestimate_alphas(net, inputs, Matrix(n, 1, 0.0), alphas);

    for (std::size_t c = 0; c < 4; ++c) {
        CHECK(gammas[c] == doctest::Approx(1.0).epsilon(1e-2));
        const double w = net.params()[c];
        CHECK(nearly_equal(new_alphas[c], gammas[c] / (w * w), 1e-9));
    }
}

TEST_CASE("gammas stay within the group sizes and alphas within the clamps") {
    Rng rng(14);
    const Layout layout{4, 3, 2, OutputKind::logistic};
    const Network net = init_network(layout, 21);
    Matrix inputs(30, 4);
    Matrix targets(30, 2);
    for (std::size_t r = 0; r < 30; ++r) {
        for (std::size_t c = 0; c < 4; ++c) inputs(r, c) = rng.gaussian();
        targets(r, 0) = inputs(r, 0) > 0.0 ? 1.0 : 0.0;
        targets(r, 1) = inputs(r, 1) > 0.0 ? 1.0 : 0.0;
    }
    const std::vector<double> alphas(layout.group_count(), 0.2);
    const auto [new_alphas, gammas] = reestimate_alphas(net, inputs, targets, alphas);
    for (std::size_t c = 0; c < layout.group_count(); ++c) {
        const auto [lo, hi] = net.group_range(c);
        CHECK(gammas[c] >= 0.0);
        CHECK(gammas[c] <= static_cast<double>(hi - lo));
        CHECK(new_alphas[c] >= kAlphaMin);
        CHECK(new_alphas[c] <= kAlphaMax);
    }
}

TEST_CASE("rank_inputs sorts ascending alpha with index tie-break") {
    ArdState state;
    state.alphas = {5.0, 1.0, 3.0, 0.7, 0.7, 0.7};  // 3 inputs + 3 tail groups
    const std::vector<std::size_t> order = rank_inputs(state);
    REQUIRE(order.size() == 3);
    CHECK(order[0] == 1);
    CHECK(order[1] == 2);
    CHECK(order[2] == 0);

    ArdState equal;
    equal.alphas.assign(7, 2.5);  // 4 inputs, all tied
    const std::vector<std::size_t> id = rank_inputs(equal);
    for (std::size_t i = 0; i < 4; ++i) CHECK(id[i] == i);
}

TEST_CASE("rank_inputs agrees with a generic sort oracle on random alphas") {
    Rng rng(15);
    ArdState state;
    const std::size_t d = 20;
    state.alphas.resize(d + 3);
    for (auto& a : state.alphas) a = std::exp(3.0 * rng.gaussian());

    std::vector<std::size_t> expect(d);
    std::iota(expect.begin(), expect.end(), 0);
    std::stable_sort(expect.begin(), expect.end(), [&](std::size_t i, std::size_t j) {
        return state.alphas[i] < state.alphas[j];
    });
    const std::vector<std::size_t> got = rank_inputs(state);
    for (std::size_t i = 0; i < d; ++i) CHECK(got[i] == expect[i]);
}

TEST_CASE("select_inputs reorders and truncates columns") {
    Matrix data = Matrix::from_rows({{0.0, 1.0, 2.0}, {10.0, 11.0, 12.0}});
    const std::vector<std::size_t> ordering = {2, 0, 1};

    const Matrix two = select_inputs(data, ordering, 2);
    REQUIRE(two.cols() == 2);
    CHECK(two(0, 0) == 2.0);
    CHECK(two(0, 1) == 0.0);
    CHECK(two(1, 0) == 12.0);

    const Matrix all = select_inputs(data, ordering, 3);
    CHECK(all(0, 2) == 1.0);

    const Matrix one = select_inputs(data, ordering, 1);
    REQUIRE(one.cols() == 1);
    CHECK(one(1, 0) == 12.0);

    CHECK_THROWS_WITH_AS(select_inputs(data, ordering, 4), "k exceeds dimension",
                         std::invalid_argument);
}

TEST_CASE("ard_train argument validation") {
    const Layout layout{2, 2, 1, OutputKind::linear};
    Matrix x(4, 2, 0.5);
    Matrix t(4, 1, 0.0);
    ArdOptions opts;
    opts.cycles = 0;
    CHECK_THROWS_WITH_AS(ard_train(x, t, layout, opts, 1), "invalid options",
                         std::invalid_argument);
    opts.cycles = 2;
    opts.alpha_init = 0.0;
    CHECK_THROWS_WITH_AS(ard_train(x, t, layout, opts, 1), "invalid hyperparameter",
                         std::invalid_argument);
}

TEST_CASE("relevance experiment separates driving inputs from noise inputs") {
    std::size_t hits = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RelevanceRun run = relevance_experiment(seed, 0.1);
        double worst_relevant = 0.0, best_noise = 1e300;
        for (std::size_t c = 0; c < 5; ++c) worst_relevant = std::max(worst_relevant, run.alphas[c]);
        for (std::size_t c = 5; c < 10; ++c) best_noise = std::min(best_noise, run.alphas[c]);
        if (best_noise >= 10.0 * worst_relevant) ++hits;
    }
    CHECK(hits >= 4);
}

TEST_CASE("relevance ordering is stable across alpha_init rescaling") {
    // only the head of the ordering carries information: the pruned noise
    // inputs all sit at huge alphas whose relative order is arbitrary
    const RelevanceRun a = relevance_experiment(2, 0.01);
    const RelevanceRun b = relevance_experiment(2, 0.1);
    const RelevanceRun c = relevance_experiment(2, 1.0);
    REQUIRE(a.relevance.size() == 10);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.relevance[i] == b.relevance[i]);
        CHECK(b.relevance[i] == c.relevance[i]);
    }
}

TEST_CASE("a single driving input gets the smallest alpha up to the layer-scale tie") {
    // identity target, one input. The input group and the second-layer group
    // share the representation scale (only the product w1*w2 is pinned down),
    // so those two alphas tie; the input must beat everything else outright
    // and sit far below the irrelevance clamp.
    Rng rng(16);
    const std::size_t n = 200;
    Matrix x(n, 1);
    Matrix t(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
        x(r, 0) = 0.25 * rng.gaussian();
        t(r, 0) = x(r, 0) + 0.05 * rng.gaussian();
    }
    const Layout layout{1, 8, 1, OutputKind::linear};
    auto [net, state] = ard_train(x, t, layout, ArdOptions{}, 3);

    const double a_in = state.alphas[0];
    CHECK(a_in < 1e3);                      // genuinely relevant, nowhere near the clamp
    CHECK(a_in < 0.01 * state.alphas[1]);   // hidden biases pruned: the map is odd
    CHECK(a_in < 0.01 * state.alphas[3]);   // output bias pruned likewise
    CHECK(a_in <= 1.3 * state.alphas[2]);   // second-layer weights: tie up to tolerance
    REQUIRE(state.relevance.size() == 1);
    CHECK(state.relevance[0] == 0);
}

TEST_CASE("reestimate_alphas is nearly idempotent at a trained fixed point") {
    Rng rng(17);
    const std::size_t n = 50;
    Matrix x(n, 1);
    Matrix t(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
        x(r, 0) = rng.gaussian();
        t(r, 0) = 0.8 * x(r, 0);
    }
    const Layout layout{1, 4, 1, OutputKind::linear};
    // the joint (weights, alphas) fixed point is approached slowly, so give
    // the loop plenty of cycles before probing the drift of one more update
    ArdOptions opts;
    opts.cycles = 50;
    opts.iters_per_cycle = 200;
    auto [net, state] = ard_train(x, t, layout, opts, 4);

    const auto first = reestimate_alphas(net, x, t, state.alphas);
    const auto second = reestimate_alphas(net, x, t, first.first);
    for (std::size_t c = 0; c < state.alphas.size(); ++c) {
        CAPTURE(c);
        CHECK(std::abs(second.first[c] - first.first[c]) < 0.02 * first.first[c]);
    }
}

TEST_CASE("cold-start cycles and weight-magnitude ranking still give permutations") {
    Rng rng(18);
    Matrix x(40, 3);
    Matrix t(40, 1);
    for (std::size_t r = 0; r < 40; ++r) {
        for (std::size_t c = 0; c < 3; ++c) x(r, c) = rng.gaussian();
        t(r, 0) = x(r, 1);
    }
    const Layout layout{3, 4, 1, OutputKind::linear};

    ArdOptions cold;
    cold.warm_start = false;
    auto [net1, s1] = ard_train(x, t, layout, cold, 5);

    ArdOptions by_weight;
    by_weight.rank_by = ArdRankBy::weight_magnitude;
    auto [net2, s2] = ard_train(x, t, layout, by_weight, 5);

    for (const auto& state : {s1, s2}) {
        std::vector<std::size_t> sorted = state.relevance;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(sorted.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(sorted[i] == i);
    }
    // the driving input should top both rankings here
    CHECK(s1.relevance[0] == 1);
    CHECK(s2.relevance[0] == 1);
}

TEST_CASE("ArdState CSV lists one row per group") {
    const Layout layout{2, 3, 1, OutputKind::linear};
    ArdState state;
    state.alphas = {0.5, 1.5, 2.5, 3.5, 4.5};
    state.gammas = {1.0, 2.0, 0.5, 1.25, 0.75};
    const std::string path = "ard_state.csv";
    save_ard_state(state, layout, path);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "group,size,alpha,gamma");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        if (rows == 1) {
            std::istringstream ss(line);
            std::string tok;
            std::getline(ss, tok, ',');
            CHECK(tok == "0");
            std::getline(ss, tok, ',');
            CHECK(tok == "3");  // fan-out of input 0
            std::getline(ss, tok, ',');
            CHECK(std::stod(tok) == 0.5);
            std::getline(ss, tok, ',');
            CHECK(std::stod(tok) == 1.0);
        }
    }
    CHECK(rows == layout.group_count());
    in.close();
    std::remove(path.c_str());
}
