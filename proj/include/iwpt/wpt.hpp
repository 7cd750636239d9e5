#pragma once

#include <armadillo>

namespace iwpt {

/** Transmit beam with an explicit power budget ||weights||^2. */
struct BeamVector {
    arma::cx_vec weights;
    double power() const { return arma::dot(arma::abs(weights), arma::abs(weights)); }
};

/** Scales v to squared norm power; throws on a zero vector. */
BeamVector beam_with_power(const arma::cx_vec& v, double power);

/** Rotates v so its largest-magnitude entry is real positive (first index on ties). */
arma::cx_vec fix_global_phase(const arma::cx_vec& v);

struct HarvestedPower {
    arma::vec per_user;
    double total = 0.0;
};

/**
 * DC power at each receiver for transmit covariance R:
 *   P_m = zeta * g_m R g_m^H, total = zeta * trace(G R G^H).
 * Throws if R is not Hermitian.
 */
HarvestedPower harvested_power(const arma::cx_mat& G, const arma::cx_mat& R,
                               double zeta);

/**
 * Sum-power optimal beam: sqrt(P_t) times the dominant right singular vector
 * of G, global phase fixed deterministically. Throws on an all-zero G.
 */
BeamVector optimal_wpt_beam(const arma::cx_mat& G, double tx_power);

/** Largest achievable total harvested power: zeta * P_t * sigma_max(G)^2. */
double e_max(const arma::cx_mat& G, double tx_power, double zeta);

}  // namespace iwpt
