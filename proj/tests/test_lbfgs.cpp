#include <doctest.h>

#include <cmath>

#include "ffqaoa/lbfgs.hpp"
#include "ffqaoa/least_squares.hpp"

using namespace ffqaoa;
using doctest::Approx;

namespace {

// f = 0.5 x^T A x - b^T x with A = diag(1..n).
double quadratic(const RVec& x, RVec& grad) {
    const int n = static_cast<int>(x.size());
    double f = 0.0;
    grad.resize(n);
    for (int i = 0; i < n; ++i) {
        double a = i + 1.0;
        f += 0.5 * a * x(i) * x(i) - x(i);
        grad(i) = a * x(i) - 1.0;
    }
    return f;
}

double rosenbrock(const RVec& x, RVec& grad) {
    double a = 1.0 - x(0);
    double b = x(1) - x(0) * x(0);
    grad.resize(2);
    grad(0) = -2.0 * a - 400.0 * x(0) * b;
    grad(1) = 200.0 * b;
    return a * a + 100.0 * b * b;
}

void rosenbrock_residuals(const RVec& x, RVec& r, RMat* jac) {
    r.resize(2);
    r(0) = 1.0 - x(0);
    r(1) = 10.0 * (x(1) - x(0) * x(0));
    if (jac) {
        jac->resize(2, 2);
        (*jac)(0, 0) = -1.0;
        (*jac)(0, 1) = 0.0;
        (*jac)(1, 0) = -20.0 * x(0);
        (*jac)(1, 1) = 10.0;
    }
}

} // namespace

TEST_CASE("lbfgs solves a strongly convex quadratic") {
    RVec x0 = RVec::Constant(8, 3.0);
    auto result = lbfgs_minimize(quadratic, x0);
    // Near the minimum the objective decrease falls below double resolution
    // before the 1e-10 gradient tolerance is met, so the line search may
    // stall first; either way the point itself is accurate.
    for (int i = 0; i < 8; ++i) {
        CHECK(result.x(i) == Approx(1.0 / (i + 1.0)).epsilon(1e-7));
    }
    CHECK(result.gradient_norm < 1e-6);
    CHECK(result.evaluations >= result.iterations);
}

TEST_CASE("lbfgs crosses the rosenbrock valley") {
    RVec x0(2);
    x0 << -1.2, 1.0;
    auto result = lbfgs_minimize(rosenbrock, x0);
    CHECK(result.converged);
    CHECK(result.x(0) == Approx(1.0).epsilon(1e-6));
    CHECK(result.x(1) == Approx(1.0).epsilon(1e-6));
    CHECK(result.value < 1e-14);
}

TEST_CASE("lbfgs respects the iteration cap") {
    RVec x0(2);
    x0 << -1.2, 1.0;
    LbfgsOptions options;
    options.max_iterations = 3;
    auto result = lbfgs_minimize(rosenbrock, x0, options);
    CHECK(result.iterations <= 3);
    CHECK_FALSE(result.converged);
    RVec g;
    CHECK(result.value == Approx(rosenbrock(result.x, g)).epsilon(1e-14));
}

TEST_CASE("lbfgs is deterministic") {
    RVec x0(2);
    x0 << -1.2, 1.0;
    auto a = lbfgs_minimize(rosenbrock, x0);
    auto b = lbfgs_minimize(rosenbrock, x0);
    CHECK((a.x - b.x).norm() == 0.0);
    CHECK(a.iterations == b.iterations);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("lm drives rosenbrock residuals to zero") {
    RVec x0(2);
    x0 << -1.2, 1.0;
    auto result = lm_minimize(rosenbrock_residuals, x0);
    CHECK(result.converged);
    CHECK(result.x(0) == Approx(1.0).epsilon(1e-9));
    CHECK(result.x(1) == Approx(1.0).epsilon(1e-9));
    CHECK(result.f < 1e-18);
}

TEST_CASE("lm honours the f_stop threshold") {
    RVec x0(2);
    x0 << -1.2, 1.0;
    LmOptions options;
    options.f_stop = 1e-6;
    auto result = lm_minimize(rosenbrock_residuals, x0, options);
    CHECK(result.converged);
    CHECK(result.f <= 1e-6);

    // A tighter run keeps going past that point.
    auto tight = lm_minimize(rosenbrock_residuals, x0);
    CHECK(tight.f < result.f);
}

TEST_CASE("lm handles a zero-dimensional problem") {
    auto empty = [](const RVec&, RVec& r, RMat*) { r.resize(0); };
    auto result = lm_minimize(empty, RVec());
    CHECK(result.converged);
    CHECK(result.iterations == 0);
    CHECK(result.f == 0.0);
}

TEST_CASE("lm accepted steps never increase the objective") {
    // Track the objective at every evaluation; the final f must equal the
    // minimum seen (LM only moves on strict decrease).
    RVec x0(2);
    x0 << 4.0, -3.0;
    double best_seen = 1e300;
    auto counting = [&](const RVec& x, RVec& r, RMat* jac) {
        rosenbrock_residuals(x, r, jac);
        best_seen = std::min(best_seen, r.squaredNorm());
    };
    auto result = lm_minimize(counting, x0);
    CHECK(result.f == Approx(best_seen).epsilon(1e-12).scale(1e-300));
    CHECK(result.converged);
}

TEST_CASE("lm is deterministic") {
    RVec x0(2);
    x0 << 0.3, 0.7;
    auto a = lm_minimize(rosenbrock_residuals, x0);
    auto b = lm_minimize(rosenbrock_residuals, x0);
    CHECK((a.x - b.x).norm() == 0.0);
    CHECK(a.iterations == b.iterations);
}
