#pragma once

#include <armadillo>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iwpt/channel.hpp"
#include "iwpt/conic.hpp"
#include "iwpt/wpt.hpp"

namespace iwpt {

/**
 * Hermitian kernel of the imaging objective: x^H T x equals the squared
 * Frobenius norm of the equivalent channel produced by beam x.
 */
struct TraceKernel {
    arma::cx_mat T;
};

/** Transmit covariance with its power budget. */
struct CovarianceMatrix {
    arma::cx_mat R;
    double tx_power = 0.0;

    /** Validates Hermitian / PSD / trace invariants; throws on violation. */
    static CovarianceMatrix checked(arma::cx_mat R, double tx_power);
};

struct SolverConfig {
    std::optional<double> penalty;      // eta; unset selects the scale-based default
    int max_iterations = 50;            // outer SCA iterations
    double eps_rank = 1e-6;             // rank residual tolerance, relative to P_t
    double eps_obj = 1e-8;              // relative penalized-objective change
    double eps_solve = 1e-8;            // conic backend accuracy
};

struct SolveDiagnostics {
    arma::vec objective;                // trace(T R) per iteration
    arma::vec penalty_residual;         // trace(R) - ||R||_2 per iteration
    arma::vec penalized_objective;      // objective + eta * residual
    arma::vec eig_ratio;                // lambda2 / lambda1 per iteration
    int iterations = 0;
    double eta = 0.0;
    double final_eig_ratio = 0.0;
    double power_slack = 0.0;           // trace(R) - P_t at the final iterate
    double wpt_slack = 0.0;             // zeta tr(G R G^H) - E_r at the final iterate
    bool rank1_converged = false;
    bool objective_converged = false;
    bool wpt_violated_after_extraction = false;
    std::vector<std::string> notes;
};

struct DigitalSolveResult {
    BeamVector beam;
    CovarianceMatrix covariance;
    SolveDiagnostics diagnostics;
};

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** T = forward^H diag(||backward col k||^2) forward, Hermitian by construction. */
TraceKernel build_trace_kernel(const ChannelSet& ch);

/** Real quadratic form x^H T x. */
double trace_objective(const TraceKernel& kernel, const arma::cx_vec& x);

/** Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix. */
arma::mat embed_hermitian(const arma::cx_mat& A);

/** Inverse of embed_hermitian; averages the redundant blocks. */
arma::cx_mat lift_hermitian(const arma::mat& X);

/**
 * One convexified step of the penalized trade-off problem around R_prev:
 *
 *   minimize   trace(T R) + eta * (trace(R) - linearized spectral norm)
 *   subject to zeta * trace(G R G^H) >= E_r,  trace(R) = P_t,  R PSD,
 *
 * where the spectral norm is linearized at the dominant eigenvector of
 * R_prev. Solved through the conic backend on the real embedding.
 * Throws InfeasibleError when E_r exceeds the achievable maximum and
 * SolverError when the backend does not converge.
 */
CovarianceMatrix solve_qsdp_subproblem(
    const TraceKernel& kernel, const arma::cx_mat& G, double tx_power,
    double e_r, double zeta, const CovarianceMatrix& R_prev, double eta,
    double eps_solve, const conic::ConicBackend& backend = conic::default_backend());

/**
 * Full successive-convex-approximation loop started from the sum-power
 * optimal covariance, followed by the rank-1 beam extraction. A run that
 * exhausts max_iterations is returned with converged flags cleared rather
 * than raised as an error.
 */
DigitalSolveResult solve_digital(
    const TraceKernel& kernel, const arma::cx_mat& G, double tx_power,
    double e_r, double zeta, const SolverConfig& cfg = {},
    const conic::ConicBackend& backend = conic::default_backend());

}  // namespace iwpt
