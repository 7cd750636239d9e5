#pragma once

#include <armadillo>

namespace iwpt::conic {

enum class SolveStatus { optimal, infeasible, max_iterations, numerical_trouble };

const char* to_string(SolveStatus s);

/**
 * Linear-objective semidefinite program over one real symmetric PSD variable:
 *
 *   minimize   <objective, X>
 *   subject to trace_coeff * trace(X) = trace_rhs
 *              <inequality_lhs, X> >= inequality_rhs   (if inequality_lhs set)
 *              X positive semidefinite.
 *
 * All matrices are symmetric and share the variable's dimension.
 */
struct SdpProblem {
    arma::mat objective;
    double trace_coeff = 1.0;
    double trace_rhs = 1.0;
    arma::mat inequality_lhs;   // empty matrix disables the inequality
    double inequality_rhs = 0.0;
};

struct SdpSolution {
    arma::mat primal;
    double objective = 0.0;
    SolveStatus status = SolveStatus::numerical_trouble;
    int iterations = 0;         // eigendecompositions spent
    double relative_gap = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
};

/** Solver interface; accuracy is the relative gap / feasibility target. */
class ConicBackend {
  public:
    virtual ~ConicBackend() = default;
    virtual SdpSolution solve(const SdpProblem& problem, double accuracy) const = 0;
};

/**
 * Exact solver specialized to this two-constraint problem class. The
 * Lagrangian dual reduces to the one-dimensional concave maximization of
 *
 *   g(y) = P * lambda_min(C - y A) + b * y,   y >= 0,  P = trace(X),
 *
 * handled by bisection on the supergradient sign; the primal optimum is
 * recovered inside the bottom eigenspace of C - y* A as a rank <= 2
 * combination that meets the inequality exactly when it is active. Every
 * solve ends with a primal/dual certificate; the returned gap is the
 * measured one, not an iteration artifact.
 */
class EigenDualBackend final : public ConicBackend {
  public:
    explicit EigenDualBackend(int max_bisection_steps = 200)
        : max_bisection_steps_(max_bisection_steps) {}
    SdpSolution solve(const SdpProblem& problem, double accuracy) const override;

  private:
    int max_bisection_steps_;
};

/** Default shared backend instance. */
const ConicBackend& default_backend();

}  // namespace iwpt::conic
