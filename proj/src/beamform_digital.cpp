#include "iwpt/beamform_digital.hpp"

#include <cmath>
#include <sstream>

namespace iwpt {

TraceKernel build_trace_kernel(const ChannelSet& ch) {
    const arma::uword n = ch.forward.n_cols;
    const arma::uword k = ch.forward.n_rows;
    if (ch.backward.n_rows != n || ch.backward.n_cols != k)
        throw std::invalid_argument("build_trace_kernel: channel shape mismatch");
    arma::vec d(k);
    for (arma::uword j = 0; j < k; ++j) {
        const double c = arma::norm(ch.backward.col(j));
        d(j) = c * c;
    }
    arma::cx_mat T(n, n, arma::fill::zeros);
    if (k > 0) T = ch.forward.t() * arma::diagmat(d) * ch.forward;
    return TraceKernel{0.5 * (T + T.t())};
}

double trace_objective(const TraceKernel& kernel, const arma::cx_vec& x) {
    if (x.n_elem != kernel.T.n_rows)
        throw std::invalid_argument("trace_objective: beam length mismatch");
    return std::real(arma::cdot(x, kernel.T * x));
}

arma::mat embed_hermitian(const arma::cx_mat& A) {
    const arma::mat re = arma::real(A);
    const arma::mat im = arma::imag(A);
    return arma::join_vert(arma::join_horiz(re, -im), arma::join_horiz(im, re));
}

arma::cx_mat lift_hermitian(const arma::mat& X) {
    if (X.n_rows != X.n_cols || X.n_rows % 2 != 0)
        throw std::invalid_argument("lift_hermitian: not an embedded matrix");
    const arma::uword n = X.n_rows / 2;
    const arma::mat x11 = X.submat(0, 0, n - 1, n - 1);
    const arma::mat x12 = X.submat(0, n, n - 1, 2 * n - 1);
    const arma::mat x21 = X.submat(n, 0, 2 * n - 1, n - 1);
    const arma::mat x22 = X.submat(n, n, 2 * n - 1, 2 * n - 1);
    return arma::cx_mat(0.5 * (x11 + x22), 0.5 * (x21 - x12));
}

CovarianceMatrix CovarianceMatrix::checked(arma::cx_mat R, double tx_power) {
    if (R.n_rows != R.n_cols)
        throw std::invalid_argument("covariance: not square");
    const double scale = std::max(1.0, arma::norm(R, "fro"));
    if (arma::norm(R - R.t(), "fro") > 1e-12 * scale)
        throw std::invalid_argument("covariance: not Hermitian");
    const double tr = std::real(arma::trace(R));
    if (std::abs(tr - tx_power) > 1e-8 * std::max(1e-300, tx_power))
        throw std::invalid_argument("covariance: trace differs from the power budget");
    arma::vec ev;
    if (!arma::eig_sym(ev, 0.5 * (R + R.t())))
        throw std::runtime_error("covariance: eigendecomposition failed");
    if (ev.min() < -1e-10 * std::max(1e-300, tr))
        throw std::invalid_argument("covariance: not positive semidefinite");
    return CovarianceMatrix{std::move(R), tx_power};
}

namespace {

arma::cx_vec dominant_eigenvector(const arma::cx_mat& R) {
    arma::vec ev;
    arma::cx_mat V;
    if (!arma::eig_sym(ev, V, 0.5 * (R + R.t())))
        throw std::runtime_error("eigendecomposition failed");
    return V.col(V.n_cols - 1);
}

double spectral_top(const arma::cx_mat& R, double* second = nullptr) {
    arma::vec ev;
    if (!arma::eig_sym(ev, 0.5 * (R + R.t())))
        throw std::runtime_error("eigendecomposition failed");
    if (second != nullptr)
        *second = ev.n_elem > 1 ? ev(ev.n_elem - 2) : 0.0;
    return ev(ev.n_elem - 1);
}

}  // namespace

CovarianceMatrix solve_qsdp_subproblem(const TraceKernel& kernel,
                                       const arma::cx_mat& G, double tx_power,
                                       double e_r, double zeta,
                                       const CovarianceMatrix& R_prev, double eta,
                                       double eps_solve,
                                       const conic::ConicBackend& backend) {
    const arma::uword n = kernel.T.n_rows;
    if (R_prev.R.n_rows != n)
        throw std::invalid_argument("solve_qsdp_subproblem: covariance size mismatch");
    if (tx_power <= 0.0)
        throw std::invalid_argument("solve_qsdp_subproblem: non-positive power budget");
    if (e_r < 0.0)
        throw std::invalid_argument("solve_qsdp_subproblem: negative power threshold");

    const bool has_rx = G.n_elem > 0 && arma::norm(G, "fro") > 0.0;
    if (e_r > 0.0) {
        const double cap = has_rx ? e_max(G, tx_power, zeta) : 0.0;
        if (e_r > cap * (1.0 + 1e-9))
            throw InfeasibleError("power threshold exceeds the achievable maximum");
    }

    const arma::cx_vec u = dominant_eigenvector(R_prev.R);
    arma::cx_mat C = kernel.T + eta * (arma::eye<arma::cx_mat>(n, n) - u * u.t());
    C = 0.5 * (C + C.t());

    conic::SdpProblem sdp;
    sdp.objective = 0.5 * embed_hermitian(C);
    sdp.trace_coeff = 0.5;
    sdp.trace_rhs = tx_power;
    if (has_rx) {
        arma::cx_mat W = zeta * (G.t() * G);
        W = 0.5 * (W + W.t());
        sdp.inequality_lhs = 0.5 * embed_hermitian(W);
        sdp.inequality_rhs = e_r;
    }

    const conic::SdpSolution sol = backend.solve(sdp, eps_solve);
    if (sol.status == conic::SolveStatus::infeasible)
        throw InfeasibleError("power threshold exceeds the achievable maximum");
    if (sol.status != conic::SolveStatus::optimal) {
        std::ostringstream msg;
        msg << "conic backend did not converge: status=" << conic::to_string(sol.status)
            << " iterations=" << sol.iterations << " gap=" << sol.relative_gap
            << " pinf=" << sol.primal_infeasibility
            << " dinf=" << sol.dual_infeasibility;
        throw SolverError(msg.str());
    }

    arma::cx_mat R = lift_hermitian(sol.primal);
    const double tr = std::real(arma::trace(R));
    if (tr > 0.0) R *= tx_power / tr;
    return CovarianceMatrix::checked(std::move(R), tx_power);
}

DigitalSolveResult solve_digital(const TraceKernel& kernel, const arma::cx_mat& G,
                                 double tx_power, double e_r, double zeta,
                                 const SolverConfig& cfg,
                                 const conic::ConicBackend& backend) {
    const arma::uword n = kernel.T.n_rows;
    if (n == 0) throw std::invalid_argument("solve_digital: empty kernel");
    if (tx_power <= 0.0)
        throw std::invalid_argument("solve_digital: non-positive power budget");
    if (e_r < 0.0)
        throw std::invalid_argument("solve_digital: negative power threshold");

    const bool has_rx = G.n_elem > 0 && arma::norm(G, "fro") > 0.0;
    const double cap = has_rx ? e_max(G, tx_power, zeta) : 0.0;
    if (e_r > cap * (1.0 + 1e-9))
        throw InfeasibleError("power threshold exceeds the achievable maximum");

    SolveDiagnostics diag;
    double eta = cfg.penalty.value_or(
        100.0 * std::real(arma::trace(kernel.T)) * tx_power / static_cast<double>(n));
    if (!(eta > 0.0)) eta = 1.0;
    diag.eta = eta;

    // sum-power optimal start; uniform beam when there is nothing to harvest
    arma::cx_vec x0;
    if (has_rx) {
        x0 = optimal_wpt_beam(G, tx_power).weights;
    } else {
        x0 = arma::cx_vec(n, arma::fill::ones) *
             std::sqrt(tx_power / static_cast<double>(n));
    }
    CovarianceMatrix R{x0 * x0.t(), tx_power};

    const int t_max = std::max(1, cfg.max_iterations);
    std::vector<double> objs, residuals, penalized, ratios;
    bool rank_ok = false, obj_ok = false;

    for (int t = 0; t < t_max; ++t) {
        R = solve_qsdp_subproblem(kernel, G, tx_power, e_r, zeta, R, eta,
                                  cfg.eps_solve, backend);
        double second = 0.0;
        const double top = spectral_top(R.R, &second);
        const double obj = std::real(arma::trace(kernel.T * R.R));
        const double residual = std::real(arma::trace(R.R)) - top;
        const double pen = obj + eta * residual;
        objs.push_back(obj);
        residuals.push_back(residual);
        penalized.push_back(pen);
        ratios.push_back(top > 0.0 ? std::max(0.0, second) / top : 0.0);

        rank_ok = residual < cfg.eps_rank * tx_power;
        if (t > 0) {
            const double prev = penalized[t - 1];
            const double change = std::abs(pen - prev) /
                                  std::max({std::abs(pen), std::abs(prev), 1e-300});
            obj_ok = change < cfg.eps_obj;
        }
        if (rank_ok && obj_ok) break;
    }

    diag.objective = arma::vec(objs);
    diag.penalty_residual = arma::vec(residuals);
    diag.penalized_objective = arma::vec(penalized);
    diag.eig_ratio = arma::vec(ratios);
    diag.iterations = static_cast<int>(objs.size());
    diag.final_eig_ratio = ratios.back();
    diag.rank1_converged = rank_ok;
    diag.objective_converged = obj_ok;
    if (!rank_ok || !obj_ok)
        diag.notes.push_back("stopped at the iteration cap before both tolerances were met");

    diag.power_slack = std::real(arma::trace(R.R)) - tx_power;
    if (has_rx)
        diag.wpt_slack = std::real(arma::trace(G * R.R * G.t())) * zeta - e_r;

    arma::cx_vec x = std::sqrt(tx_power) * fix_global_phase(dominant_eigenvector(R.R));
    if (has_rx && e_r > 0.0) {
        const double achieved = zeta * std::pow(arma::norm(G * x), 2);
        if (achieved < e_r * (1.0 - 1e-6)) {
            diag.wpt_violated_after_extraction = true;
            diag.notes.push_back("rank-1 extraction violated the harvested-power constraint");
        }
    }

    return DigitalSolveResult{BeamVector{std::move(x)}, std::move(R), std::move(diag)};
}

}  // namespace iwpt
