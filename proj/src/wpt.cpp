#include "iwpt/wpt.hpp"

#include <stdexcept>

namespace iwpt {

BeamVector beam_with_power(const arma::cx_vec& v, double power) {
    const double n = arma::norm(v);
    if (n == 0.0) throw std::invalid_argument("beam_with_power: zero vector");
    if (power < 0.0) throw std::invalid_argument("beam_with_power: negative power");
    return BeamVector{v * (std::sqrt(power) / n)};
}

arma::cx_vec fix_global_phase(const arma::cx_vec& v) {
    const arma::uword i = arma::abs(v).index_max();
    const double mag = std::abs(v(i));
    if (mag == 0.0) return v;
    return v * (std::conj(v(i)) / mag);
}

HarvestedPower harvested_power(const arma::cx_mat& G, const arma::cx_mat& R,
                               double zeta) {
    if (R.n_rows != R.n_cols || R.n_cols != G.n_cols)
        throw std::invalid_argument("harvested_power: dimension mismatch");
    const double dev = R.n_elem == 0 ? 0.0 : arma::norm(R - R.t(), "fro");
    const double scale = std::max(1e-300, arma::norm(R, "fro"));
    if (dev > 1e-10 * scale)
        throw std::invalid_argument("harvested_power: covariance is not Hermitian");

    HarvestedPower out;
    out.per_user.set_size(G.n_rows);
    for (arma::uword m = 0; m < G.n_rows; ++m) {
        const arma::cx_rowvec g = G.row(m);
        out.per_user(m) = zeta * std::real(arma::as_scalar(g * R * g.t()));
    }
    out.total = arma::accu(out.per_user);
    return out;
}

BeamVector optimal_wpt_beam(const arma::cx_mat& G, double tx_power) {
    if (G.n_elem == 0 || arma::norm(G, "fro") == 0.0)
        throw std::invalid_argument("optimal_wpt_beam: zero channel");
    arma::cx_mat U, V;
    arma::vec sv;
    if (!arma::svd(U, sv, V, G))
        throw std::runtime_error("optimal_wpt_beam: SVD failed");
    arma::cx_vec v1 = fix_global_phase(V.col(0));
    return BeamVector{std::sqrt(tx_power) * v1};
}

double e_max(const arma::cx_mat& G, double tx_power, double zeta) {
    if (G.n_elem == 0) return 0.0;
    const arma::vec sv = arma::svd(G);
    return zeta * tx_power * sv.max() * sv.max();
}

}  // namespace iwpt
