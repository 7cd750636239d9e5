#pragma once

#include <armadillo>

#include "iwpt/scene.hpp"

namespace iwpt {

/**
 * Narrowband line-of-sight channels of one scene.
 *   forward  : K x N, array elements -> ROI cells
 *   backward : N x K, ROI cells -> array elements (transpose of forward)
 *   receivers: M x N, array elements -> energy receivers
 */
struct ChannelSet {
    arma::cx_mat forward;
    arma::cx_mat backward;
    arma::cx_mat receivers;
    double wavelength = 0.0;
};

/**
 * Element power pattern: cos(theta)^q on the front hemisphere, 0 behind.
 * theta in radians measured from the plane normal; q = 0 gives the
 * isotropic hemisphere.
 */
double element_gain(double theta, double q);

/**
 * Builds the three channel matrices. Each entry is
 * F(theta) * lambda/(4 pi d) * exp(-j 2 pi d / lambda) with d the
 * element-to-point distance. Throws if any distance is zero.
 */
ChannelSet build_channels(const Scene& s);

}  // namespace iwpt
