// Serial reference vs OpenMP kernels, plus the blocked batch gradient against
// its single-loop reference. Run with --benchmark_filter to narrow.
#include <benchmark/benchmark.h>

#include <vector>

#include "vibsel/kernels.hpp"
#include "vibsel/matrix.hpp"
#include "vibsel/mlp.hpp"
#include "vibsel/rng.hpp"

namespace {

using namespace vibsel;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Matrix m(rows, cols);
    Rng rng(seed);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.gaussian();
    return m;
}

// SPD with a dominant diagonal so Cholesky always succeeds.
Matrix random_spd(std::size_t n, std::uint64_t seed) {
    const Matrix j = random_matrix(n + 8, n, seed);
    Matrix a(n, n);
    kernels::serial::gram(j, a);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
    return a;
}

template <void (*Cov)(const Matrix&, Matrix&)>
void bm_covariance(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix data = random_matrix(200, n, 7);
    Matrix cov(n, n);
    for (auto _ : state) {
        Cov(data, cov);
        benchmark::DoNotOptimize(cov.data());
    }
}

template <void (*Gram)(const Matrix&, Matrix&)>
void bm_gram(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix j = random_matrix(200, n, 11);
    Matrix out(n, n);
    for (auto _ : state) {
        Gram(j, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool (*Chol)(Matrix&)>
void bm_cholesky(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_spd(n, 13);
    for (auto _ : state) {
        Matrix work = a;
        benchmark::DoNotOptimize(Chol(work));
    }
}

template <std::vector<double> (*InvDiag)(const Matrix&)>
void bm_inverse_diagonal(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Matrix chol = random_spd(n, 17);
    kernels::serial::cholesky(chol);
    for (auto _ : state) {
        auto diag = InvDiag(chol);
        benchmark::DoNotOptimize(diag.data());
    }
}

template <ErrorGrad (*Grad)(const Network&, const Matrix&, const Matrix&)>
void bm_batch_gradient(benchmark::State& state) {
    const std::size_t n_in = static_cast<std::size_t>(state.range(0));
    const Layout layout{n_in, 8, 3, OutputKind::logistic};
    const Network net = init_network(layout, 23);
    const Matrix inputs = random_matrix(256, n_in, 29);
    Matrix targets(256, 3);
    Rng rng(31);
    for (std::size_t r = 0; r < 256; ++r)
        for (std::size_t c = 0; c < 3; ++c) targets(r, c) = rng.uniform() < 0.5 ? 0.0 : 1.0;
    for (auto _ : state) {
        ErrorGrad eg = Grad(net, inputs, targets);
        benchmark::DoNotOptimize(eg.grad.data());
    }
}

}  // namespace

BENCHMARK(bm_covariance<kernels::serial::covariance>)->Name("covariance/serial")->Arg(128)->Arg(512);
BENCHMARK(bm_covariance<kernels::par::covariance>)->Name("covariance/par")->Arg(128)->Arg(512);
BENCHMARK(bm_gram<kernels::serial::gram>)->Name("gram/serial")->Arg(128)->Arg(512);
BENCHMARK(bm_gram<kernels::par::gram>)->Name("gram/par")->Arg(128)->Arg(512);
BENCHMARK(bm_cholesky<kernels::serial::cholesky>)->Name("cholesky/serial")->Arg(128)->Arg(512);
BENCHMARK(bm_cholesky<kernels::par::cholesky>)->Name("cholesky/par")->Arg(128)->Arg(512);
BENCHMARK(bm_inverse_diagonal<kernels::serial::inverse_diagonal>)
    ->Name("inverse_diagonal/serial")
    ->Arg(128)
    ->Arg(512);
BENCHMARK(bm_inverse_diagonal<kernels::par::inverse_diagonal>)
    ->Name("inverse_diagonal/par")
    ->Arg(128)
    ->Arg(512);
BENCHMARK(bm_batch_gradient<data_error_grad_serial>)->Name("batch_gradient/serial")->Arg(64)->Arg(256);
BENCHMARK(bm_batch_gradient<data_error_grad>)->Name("batch_gradient/blocked")->Arg(64)->Arg(256);

BENCHMARK_MAIN();
