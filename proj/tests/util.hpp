#pragma once

#include <armadillo>
#include <cstdint>
#include <random>

#include "iwpt/rng.hpp"
#include "iwpt/scene.hpp"
#include "iwpt/wpt.hpp"

namespace iwpt::testutil {

/**
 * Deterministic pseudo-random scene drawn from the preset family: random
 * array and ROI dimensions, jittered receiver and ROI placement, random
 * element pattern, transmit power, and conversion efficiency. Always valid
 * (receivers and ROI stay inside the radiating near field of the array).
 *
 * Array sides are drawn from [2, max_array_side] and the ROI sides from
 * [1, max_roi_side] x [2, max_roi_side], so with the defaults N <= 12 and
 * K <= 8.
 */
inline Scene random_scene(std::uint64_t seed, int max_array_side = 3,
                          int max_roi_side = 2) {
    std::mt19937_64 gen(mix_seed(seed, 0x5ce9eULL));
    auto pick = [&gen](int lo, int hi) {
        return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    auto jitter = [&gen](double spread) {
        return 1.0 + spread * (2.0 * detail::canonical_unit(gen) - 1.0);
    };

    const int ar = pick(2, std::max(2, max_array_side));
    const int ac = pick(2, std::max(2, std::min(max_array_side + 1, 4)));
    const int rr = pick(1, std::max(1, max_roi_side));
    const int rc = pick(2, std::max(2, max_roi_side));
    Scene s = preset_scene(ar, ac, rr, rc);

    s.pattern_exponent = static_cast<double>(pick(0, 2));
    s.tx_power = 0.5 + 1.5 * detail::canonical_unit(gen);
    s.efficiency = 0.3 + 0.4 * detail::canonical_unit(gen);

    // Keep every point within ~1.1x its preset range: the presets place the
    // farthest geometry at 40% of the far-field distance, so a 10% jitter
    // cannot push anything out of the valid region.
    s.roi.center *= jitter(0.05);
    s.roi.cell_size *= jitter(0.10);
    for (auto& p : s.receivers.positions) p *= jitter(0.10);
    return s;
}

/** Random beam with exactly the requested power. */
inline arma::cx_vec random_beam(arma::uword n, double power, std::uint64_t seed) {
    return beam_with_power(complex_gaussian(n, 1.0, seed), power).weights;
}

}  // namespace iwpt::testutil
