#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <armadillo>
#include <string>

#include "iwpt/conic.hpp"

using namespace iwpt::conic;

namespace {

arma::mat random_sym(arma::uword n, unsigned seed) {
    arma::arma_rng::set_seed(seed);
    const arma::mat a(n, n, arma::fill::randn);
    return 0.5 * (a + a.t());
}

double inner(const arma::mat& a, const arma::mat& b) { return arma::dot(a, b); }

/** Checks the primal certificate of a solution against the problem data. */
void check_feasible(const SdpProblem& p, const SdpSolution& sol, double tol) {
    REQUIRE(sol.primal.n_rows == p.objective.n_rows);
    // Symmetric PSD variable.
    CHECK(arma::norm(sol.primal - sol.primal.t(), "fro") < tol);
    const arma::vec ev = arma::eig_sym(sol.primal);
    CHECK(ev.min() > -tol * (1.0 + std::abs(ev.max())));
    // Trace constraint.
    CHECK(p.trace_coeff * arma::trace(sol.primal) ==
          doctest::Approx(p.trace_rhs).epsilon(1e-8));
    // Inequality, when present.
    if (!p.inequality_lhs.is_empty())
        CHECK(inner(p.inequality_lhs, sol.primal) >= p.inequality_rhs - tol);
    // Reported objective matches the primal matrix.
    CHECK(sol.objective ==
          doctest::Approx(inner(p.objective, sol.primal)).epsilon(1e-8));
}

}  // namespace

TEST_CASE("unconstrained-direction problem reduces to the bottom eigenvector") {
    const arma::uword n = 5;
    SdpProblem p;
    p.objective = random_sym(n, 101);
    p.trace_coeff = 1.0;
    p.trace_rhs = 2.0;

    const SdpSolution sol = default_backend().solve(p, 1e-9);
    REQUIRE(sol.status == SolveStatus::optimal);
    check_feasible(p, sol, 1e-8);

    const arma::vec ev = arma::eig_sym(p.objective);
    CHECK(sol.objective == doctest::Approx(2.0 * ev.min()).epsilon(1e-10));
    CHECK(sol.relative_gap < 1e-9);
}

TEST_CASE("analytic diagonal instance with an active inequality") {
    // minimize X22 s.t. trace X = 1, -X11 >= -0.4, X psd.
    // Optimum: X = diag(0.4, 0.6), objective 0.6, inequality tight.
    SdpProblem p;
    p.objective = arma::diagmat(arma::vec{0.0, 1.0});
    p.trace_rhs = 1.0;
    p.inequality_lhs = arma::diagmat(arma::vec{-1.0, 0.0});
    p.inequality_rhs = -0.4;

    const SdpSolution sol = default_backend().solve(p, 1e-9);
    REQUIRE(sol.status == SolveStatus::optimal);
    check_feasible(p, sol, 1e-8);
    CHECK(sol.objective == doctest::Approx(0.6).epsilon(1e-8));
    CHECK(sol.primal(0, 0) == doctest::Approx(0.4).epsilon(1e-7));
    CHECK(sol.primal(1, 1) == doctest::Approx(0.6).epsilon(1e-7));
    CHECK(inner(p.inequality_lhs, sol.primal) ==
          doctest::Approx(-0.4).epsilon(1e-8));
}

TEST_CASE("analytic instance where the inequality is slack") {
    // minimize X22 s.t. trace X = 1, X11 >= 0.6: putting all mass on X11
    // is optimal with objective 0 and the inequality strictly satisfied.
    SdpProblem p;
    p.objective = arma::diagmat(arma::vec{0.0, 1.0});
    p.trace_rhs = 1.0;
    p.inequality_lhs = arma::diagmat(arma::vec{1.0, 0.0});
    p.inequality_rhs = 0.6;

    const SdpSolution sol = default_backend().solve(p, 1e-9);
    REQUIRE(sol.status == SolveStatus::optimal);
    check_feasible(p, sol, 1e-8);
    CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(inner(p.inequality_lhs, sol.primal) >= 0.6 - 1e-8);
}

TEST_CASE("boundary instance pinned to the top eigenvector of the constraint") {
    // The inequality demands the maximum achievable value, so the only
    // feasible point is the top eigenvector of A scaled to the trace budget.
    SdpProblem p;
    p.objective = arma::diagmat(arma::vec{1.0, 2.0});
    p.trace_rhs = 1.0;
    p.inequality_lhs = arma::diagmat(arma::vec{0.0, 1.0});
    p.inequality_rhs = 1.0;  // equals trace_rhs * lambda_max(A)

    const SdpSolution sol = default_backend().solve(p, 1e-9);
    REQUIRE(sol.status == SolveStatus::optimal);
    check_feasible(p, sol, 1e-7);
    CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(sol.primal(1, 1) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("unsatisfiable inequality reports infeasible") {
    SdpProblem p;
    p.objective = random_sym(3, 103);
    p.trace_rhs = 1.0;
    p.inequality_lhs = arma::diagmat(arma::vec{1.0, 0.5, 0.0});
    p.inequality_rhs = 2.0;  // max achievable is lambda_max = 1

    const SdpSolution sol = default_backend().solve(p, 1e-9);
    CHECK(sol.status == SolveStatus::infeasible);
}

TEST_CASE("matches a random-sampling oracle on small instances") {
    for (unsigned seed : {7u, 8u, 9u}) {
        const arma::uword n = 3;
        SdpProblem p;
        p.objective = random_sym(n, seed);
        p.trace_rhs = 1.5;
        p.inequality_lhs = random_sym(n, seed + 50);
        // Ask for a value between the bottom eigenvector's level and the
        // maximum, so the constraint genuinely bites for some objectives.
        const arma::vec av = arma::eig_sym(p.inequality_lhs);
        p.inequality_rhs = p.trace_rhs * (0.25 * av.min() + 0.75 * av.max());

        const SdpSolution sol = default_backend().solve(p, 1e-9);
        REQUIRE(sol.status == SolveStatus::optimal);
        check_feasible(p, sol, 1e-7);
        CHECK(sol.relative_gap <= 1e-9);

        // Monte-Carlo upper bound: the sampled minimum can only be above the
        // true optimum, so the solver must come in at or below it.
        arma::arma_rng::set_seed(seed + 900);
        double best = arma::datum::inf;
        for (int t = 0; t < 20000; ++t) {
            arma::mat v(n, 2, arma::fill::randn);
            arma::mat x = v * v.t();
            x *= p.trace_rhs / (p.trace_coeff * arma::trace(x));
            if (inner(p.inequality_lhs, x) < p.inequality_rhs) continue;
            best = std::min(best, inner(p.objective, x));
        }
        if (std::isfinite(best)) CHECK(sol.objective <= best + 1e-9);
    }
}

TEST_CASE("trace coefficient rescales the feasible set consistently") {
    SdpProblem a;
    a.objective = random_sym(4, 300);
    a.trace_coeff = 1.0;
    a.trace_rhs = 3.0;

    SdpProblem b = a;
    b.trace_coeff = 0.5;
    b.trace_rhs = 1.5;  // same trace(X) = 3

    const SdpSolution sa = default_backend().solve(a, 1e-10);
    const SdpSolution sb = default_backend().solve(b, 1e-10);
    REQUIRE(sa.status == SolveStatus::optimal);
    REQUIRE(sb.status == SolveStatus::optimal);
    CHECK(sa.objective == doctest::Approx(sb.objective).epsilon(1e-10));
    CHECK(arma::norm(sa.primal - sb.primal, "fro") < 1e-8);
}

TEST_CASE("solves are deterministic") {
    SdpProblem p;
    p.objective = random_sym(6, 104);
    p.trace_rhs = 1.0;
    p.inequality_lhs = random_sym(6, 105);
    const arma::vec av = arma::eig_sym(p.inequality_lhs);
    p.inequality_rhs = 0.5 * av.max();

    const SdpSolution s1 = default_backend().solve(p, 1e-9);
    const SdpSolution s2 = default_backend().solve(p, 1e-9);
    CHECK(arma::norm(s1.primal - s2.primal, "fro") == 0.0);
    CHECK(s1.objective == s2.objective);
    CHECK(s1.iterations == s2.iterations);
}

TEST_CASE("malformed problems are rejected") {
    SdpProblem p;
    CHECK_THROWS_AS(default_backend().solve(p, 1e-9), std::invalid_argument);  // empty

    p.objective = arma::mat(3, 2, arma::fill::zeros);
    CHECK_THROWS_AS(default_backend().solve(p, 1e-9), std::invalid_argument);  // not square

    p.objective = random_sym(3, 106);
    p.trace_coeff = 0.0;
    CHECK_THROWS_AS(default_backend().solve(p, 1e-9), std::invalid_argument);

    p.trace_coeff = 1.0;
    p.inequality_lhs = random_sym(4, 107);  // wrong dimension
    CHECK_THROWS_AS(default_backend().solve(p, 1e-9), std::invalid_argument);
}

TEST_CASE("status strings are stable") {
    CHECK(std::string(to_string(SolveStatus::optimal)) == "optimal");
    CHECK(std::string(to_string(SolveStatus::infeasible)) == "infeasible");
    CHECK(std::string(to_string(SolveStatus::max_iterations)) == "max_iterations");
    CHECK(std::string(to_string(SolveStatus::numerical_trouble)) == "numerical_trouble");
}
