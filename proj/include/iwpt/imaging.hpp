#pragma once

#include <armadillo>
#include <cstdint>
#include <vector>

#include "iwpt/channel.hpp"

namespace iwpt {

/**
 * Equivalent imaging channel for a transmit beam x:
 *   H = backward * diag(forward * x),  size N x K.
 * Column k carries the round trip through ROI cell k.
 */
arma::cx_mat equivalent_channel(const ChannelSet& ch, const arma::cx_vec& x);

/** y = H gamma + n with n circular complex Gaussian of per-entry variance noise_power. */
arma::cx_vec simulate_received(const arma::cx_mat& H, const arma::cx_vec& gamma,
                               double noise_power, std::uint64_t seed);
arma::cx_vec simulate_received(const ChannelSet& ch, const arma::cx_vec& x,
                               const ScatteringField& field, double noise_power,
                               std::uint64_t seed);

/**
 * Least-squares estimate through the SVD pseudo-inverse. Singular values
 * below rtol * sigma_max are truncated.
 */
arma::cx_vec ls_estimate(const arma::cx_mat& H, const arma::cx_vec& y,
                         double rtol = 1e-10);

/**
 * Ratio of largest to smallest singular value. Returns +inf when the
 * smallest is below 1e-14 * sigma_max; throws on an all-zero matrix.
 */
double condition_number(const arma::cx_mat& H);

/** sqrt(mean over trials of ||estimate - truth||^2). Throws on an empty list. */
double rmse(const std::vector<arma::cx_vec>& estimates, const arma::cx_vec& truth);

}  // namespace iwpt
