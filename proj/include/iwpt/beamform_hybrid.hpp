#pragma once

#include <armadillo>
#include <cstdint>

#include "iwpt/beamform_digital.hpp"

namespace iwpt {

/**
 * Partially connected hybrid precoder: chain i drives the contiguous element
 * block i*elements_per_chain .. (i+1)*elements_per_chain - 1 through phase
 * shifters only.
 *   phases : chains x elements_per_chain, radians in [0, 2 pi)
 *   weights: one complex digital weight per chain
 */
struct HybridPrecoder {
    arma::mat phases;
    arma::cx_vec weights;

    int chains() const { return static_cast<int>(phases.n_rows); }
    int elements_per_chain() const { return static_cast<int>(phases.n_cols); }
};

struct HybridMetrics {
    double trace_objective = 0.0;
    double condition_number = 0.0;
    double harvested = 0.0;
};

struct HybridResult {
    HybridPrecoder precoder;
    BeamVector beam;                 // composed Q w
    HybridMetrics metrics;
    arma::vec residuals;             // ||x_target - Q w|| per iteration
    DigitalSolveResult digital;      // the fully digital stage it approximates
};

/** Block-structured analog matrix Q, size (chains*elements_per_chain) x chains. */
arma::cx_mat analog_matrix(const HybridPrecoder& hp);

/** Composed transmit beam x = Q w. */
arma::cx_vec compose(const HybridPrecoder& hp);

/**
 * Least-squares digital stage against a target beam: w = (Q^H Q)^-1 Q^H x,
 * then rescaled so the composed beam meets the power budget
 * (||w||^2 = P_t / elements_per_chain). Throws if the projection is zero.
 */
arma::cx_vec digital_update(const arma::mat& phases, const arma::cx_vec& target,
                            double tx_power);

/**
 * Phase-only analog stage: phi_{i,l} = arg(target_{i,l}) - arg(w_i),
 * wrapped to [0, 2 pi). Throws if any digital weight is zero.
 */
arma::mat analog_update(const arma::cx_vec& weights, const arma::cx_vec& target,
                        int elements_per_chain);

struct AlternatingResult {
    HybridPrecoder precoder;
    arma::vec residuals;
};

/**
 * Alternating digital / analog matching of a target beam from seeded random
 * phases. Requires at least two iterations; the iteration is a fixed point
 * from the second one on.
 */
AlternatingResult alternating_optimize(const arma::cx_vec& target, int chains,
                                       int elements_per_chain, double tx_power,
                                       int iterations, std::uint64_t seed);

/**
 * Digital trade-off solve followed by hybrid matching of its beam; metrics
 * are evaluated on the composed beam. The harvested-power threshold is not
 * re-enforced on the composed beam, only reported.
 */
HybridResult hybrid_tradeoff(const ChannelSet& ch, double tx_power, double e_r,
                             double zeta, const SolverConfig& cfg, int chains,
                             int elements_per_chain, std::uint64_t seed = 0,
                             int matching_iterations = 10);

}  // namespace iwpt
