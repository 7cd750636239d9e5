#include "iwpt/conic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iwpt::conic {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::numerical_trouble: return "numerical_trouble";
    }
    return "unknown";
}

namespace {

arma::mat sym(const arma::mat& M) { return 0.5 * (M + M.t()); }

struct Spectrum {
    arma::vec values;
    arma::mat vectors;
};

/**
 * Rank <= 2 matrix X on the span of the orthonormal columns of S with
 * trace(X) = total and <A, X> as close to target as the span permits.
 * Directions are sorted by their A-value; an adjacent pair bracketing the
 * target is blended so the constraint holds with equality.
 */
arma::mat span_with_target(const arma::mat& S, const arma::mat& A, double total,
                           double target) {
    const arma::mat As = sym(S.t() * A * S);
    arma::vec alpha;
    arma::mat W;
    arma::eig_sym(alpha, W, As);
    const arma::mat U = S * W;          // directions with A-values alpha (ascending)
    const arma::uword m = alpha.n_elem;

    const double lo = total * alpha(0);
    const double hi = total * alpha(m - 1);
    if (target <= lo) return total * U.col(0) * U.col(0).t();
    if (target >= hi) return total * U.col(m - 1) * U.col(m - 1).t();

    arma::uword j = 0;
    while (j + 2 < m && total * alpha(j + 1) <= target) ++j;
    const double a0 = total * alpha(j), a1 = total * alpha(j + 1);
    const double t = (target - a0) / (a1 - a0);
    return total * ((1.0 - t) * U.col(j) * U.col(j).t() +
                    t * U.col(j + 1) * U.col(j + 1).t());
}

}  // namespace

SdpSolution EigenDualBackend::solve(const SdpProblem& problem,
                                    double accuracy) const {
    const arma::uword n = problem.objective.n_rows;
    if (n == 0 || problem.objective.n_cols != n)
        throw std::invalid_argument("conic: objective must be square and non-empty");
    if (problem.trace_coeff == 0.0)
        throw std::invalid_argument("conic: zero trace coefficient");
    const bool has_ineq = problem.inequality_lhs.n_elem > 0;
    if (has_ineq && (problem.inequality_lhs.n_rows != n ||
                     problem.inequality_lhs.n_cols != n))
        throw std::invalid_argument("conic: inequality dimension mismatch");

    const double total = problem.trace_rhs / problem.trace_coeff;  // trace of X
    if (!(total > 0.0))
        throw std::invalid_argument("conic: trace equality admits no PSD point");

    // Normalized data: the dual variable and all eigenvalues stay O(1 + y).
    const double cs = std::max(arma::norm(sym(problem.objective), "fro"), 1e-300);
    const arma::mat C = sym(problem.objective) / cs;
    arma::mat A;
    double b = 0.0;
    double as = 1.0;
    if (has_ineq) {
        as = std::max(arma::norm(sym(problem.inequality_lhs), "fro"), 1e-300);
        A = sym(problem.inequality_lhs) / as;
        b = problem.inequality_rhs / as;
    }

    int eigs_used = 0;
    auto spectrum = [&](double y) {
        Spectrum sp;
        const arma::mat M = has_ineq ? arma::mat(C - y * A) : C;
        if (!arma::eig_sym(sp.values, sp.vectors, M))
            throw std::runtime_error("conic: eigendecomposition failed");
        ++eigs_used;
        return sp;
    };

    // Bottom eigenspace, with the tolerance widened until the inequality
    // target becomes reachable inside it (it always is at the optimum).
    auto bottom_space = [&](const Spectrum& sp, double y,
                            bool want_target) -> arma::mat {
        const double scale = 1.0 + std::abs(y);
        for (double gaptol = 1e-9 * scale;; gaptol *= 10.0) {
            const arma::uvec idx =
                arma::find(sp.values <= sp.values(0) + gaptol);
            const arma::mat S = sp.vectors.cols(idx);
            if (!want_target || idx.n_elem == n) return S;
            const arma::vec av = arma::eig_sym(sym(S.t() * A * S));
            if (total * av.max() >= b - 1e-12 * scale * total) return S;
        }
    };

    auto assemble = [&](const arma::mat& X, double y1, double y2) {
        SdpSolution sol;
        sol.primal = sym(X);
        sol.objective = cs * arma::dot(C, sol.primal);
        sol.iterations = eigs_used;
        const double pobj = arma::dot(C, sol.primal);
        const double dobj = total * y1 + b * y2;
        sol.relative_gap =
            std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        double viol = std::abs(arma::trace(sol.primal) - total) / (1.0 + total);
        if (has_ineq)
            viol = std::max(viol, std::max(0.0, b - arma::dot(A, sol.primal)) /
                                      (1.0 + std::abs(b)));
        sol.primal_infeasibility = viol;
        sol.dual_infeasibility = 0.0;  // Z = C - y1 I - y2 A is PSD by construction
        sol.status = (sol.relative_gap <= accuracy &&
                      sol.primal_infeasibility <= accuracy)
                         ? SolveStatus::optimal
                         : SolveStatus::numerical_trouble;
        return sol;
    };

    if (!has_ineq) {
        const Spectrum sp = spectrum(0.0);
        const arma::vec v = sp.vectors.col(0);
        return assemble(total * v * v.t(), sp.values(0), 0.0);
    }

    // Inactive inequality: the bottom eigenspace of C already reaches b.
    {
        const Spectrum sp = spectrum(0.0);
        const arma::mat S = bottom_space(sp, 0.0, false);
        const arma::vec av = arma::eig_sym(sym(S.t() * A * S));
        if (total * av.max() >= b) {
            const arma::mat X = span_with_target(S, A, total, std::max(b, total * av.min()));
            return assemble(X, sp.values(0), 0.0);
        }
    }

    // Reachability of the target inside the bottom eigenspace of C - y A is
    // monotone in y; bisect its boundary. H(y) >= 0 means reachable.
    auto reachable = [&](const Spectrum& sp, double y) {
        const arma::mat S = bottom_space(sp, y, false);
        const arma::vec av = arma::eig_sym(sym(S.t() * A * S));
        return total * av.max() >= b;
    };

    double y_lo = 0.0, y_hi = 1.0;
    int doublings = 0;
    while (!reachable(spectrum(y_hi), y_hi)) {
        y_lo = y_hi;
        y_hi *= 2.0;
        if (++doublings > 60) {
            // b exceeds total * lambda_max(A): no PSD matrix of this trace
            // satisfies the inequality.
            SdpSolution sol;
            const Spectrum sp = spectrum(y_hi);
            const arma::mat S = bottom_space(sp, y_hi, false);
            sol = assemble(span_with_target(S, A, total, b), sp.values(0), y_hi);
            sol.status = SolveStatus::infeasible;
            return sol;
        }
    }
    for (int i = 0; i < max_bisection_steps_; ++i) {
        const double mid = 0.5 * (y_lo + y_hi);
        if (mid <= y_lo || mid >= y_hi) break;  // interval at machine width
        if (reachable(spectrum(mid), mid))
            y_hi = mid;
        else
            y_lo = mid;
    }

    const Spectrum sp = spectrum(y_hi);
    const arma::mat S = bottom_space(sp, y_hi, true);
    const arma::mat X = span_with_target(S, A, total, b);
    return assemble(X, sp.values(0), y_hi);
}

const ConicBackend& default_backend() {
    static const EigenDualBackend backend;
    return backend;
}

}  // namespace iwpt::conic
