#include "vibsel/scg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vibsel/matrix.hpp"

namespace vibsel {

namespace {

constexpr double kLambdaMin = 1e-15;
constexpr double kLambdaMax = 1e15;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

ScgResult scg_minimize(const Objective& objective, std::vector<double> w0, const ScgOptions& opts) {
    if (opts.max_iters == 0 || opts.grad_tol <= 0.0 || opts.step_tol <= 0.0 || opts.sigma0 <= 0.0 ||
        opts.lambda0 <= 0.0)
        throw std::invalid_argument("invalid options");

    const std::size_t n = w0.size();
    std::vector<double> grad(n), grad_try(n), w_try(n);

    double err = objective(w0, grad);
    if (!finite(err) || !std::all_of(grad.begin(), grad.end(), finite))
        throw std::invalid_argument("invalid start");

    ScgResult res;
    res.w = std::move(w0);
    res.trace.errors.push_back(err);

    std::vector<double> r(n), p(n), s(n), r_new(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = -grad[i];
    p = r;

    if (norm2(grad) < opts.grad_tol) {
        res.trace.stop_reason = ScgStop::grad_tol;
        return res;
    }

    double lambda = opts.lambda0;
    double lambda_bar = 0.0;
    bool success = true;
    double delta = 0.0;
    double p_sq = dot(p, p);

    for (std::size_t k = 1; k <= opts.max_iters; ++k) {
        res.trace.iterations = k;

        if (success) {
            p_sq = dot(p, p);
            const double p_norm = std::sqrt(p_sq);
            if (p_norm == 0.0) {
                res.trace.stop_reason = ScgStop::grad_tol;
                break;
            }
            const double sigma = opts.sigma0 / p_norm;
            for (std::size_t i = 0; i < n; ++i) w_try[i] = res.w[i] + sigma * p[i];
            objective(w_try, grad_try);
            for (std::size_t i = 0; i < n; ++i) s[i] = (grad_try[i] - grad[i]) / sigma;
            delta = dot(p, s);
        }

        delta += (lambda - lambda_bar) * p_sq;
        if (delta <= 0.0) {  // force the scaled Hessian positive definite
            lambda_bar = 2.0 * (lambda - delta / p_sq);
            delta = -delta + lambda * p_sq;
            lambda = lambda_bar;
        }

        const double mu = dot(p, r);
        const double alpha = mu / delta;

        for (std::size_t i = 0; i < n; ++i) w_try[i] = res.w[i] + alpha * p[i];
        const double err_try = objective(w_try, grad_try);

        const double comparison =
            finite(err_try) ? 2.0 * delta * (err - err_try) / (mu * mu) : -1.0;

        if (comparison >= 0.0) {
            // accepted step
            res.w = w_try;
            err = err_try;
            grad = grad_try;
            for (std::size_t i = 0; i < n; ++i) r_new[i] = -grad[i];
            lambda_bar = 0.0;
            success = true;
            res.trace.errors.push_back(err);

            if (k % n == 0) {
                p = r_new;  // periodic restart
            } else {
                const double beta = (dot(r_new, r_new) - dot(r_new, r)) / mu;
                for (std::size_t i = 0; i < n; ++i) p[i] = r_new[i] + beta * p[i];
            }
            r = r_new;

            if (comparison >= 0.75) lambda = std::max(lambda * 0.5, kLambdaMin);

            if (norm2(grad) < opts.grad_tol) {
                res.trace.stop_reason = ScgStop::grad_tol;
                return res;
            }
            if (std::abs(alpha) * std::sqrt(p_sq) < opts.step_tol) {
                res.trace.stop_reason = ScgStop::step_tol;
                return res;
            }
        } else {
            lambda_bar = lambda;
            success = false;
            res.trace.errors.push_back(err);
        }

        if (comparison < 0.25) lambda = std::min(lambda * 4.0, kLambdaMax);
    }

    res.trace.stop_reason = res.trace.iterations >= opts.max_iters ? ScgStop::max_iters : res.trace.stop_reason;
    return res;
}

}  // namespace vibsel
