#pragma once

#include <armadillo>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace iwpt {

/** Stateless 64-bit mixer used to derive independent per-task seeds. */
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {
inline double canonical_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
}
}  // namespace detail

/**
 * Circularly symmetric complex Gaussian vector, per-entry variance
 * `variance` (variance/2 per real dimension). Explicit Box-Muller on
 * mt19937_64 uniforms so the stream is identical on every platform.
 */
inline arma::cx_vec complex_gaussian(arma::uword n, double variance,
                                     std::uint64_t seed) {
    if (variance < 0.0) throw std::invalid_argument("negative noise variance");
    arma::cx_vec out(n, arma::fill::zeros);
    if (variance == 0.0) return out;
    std::mt19937_64 gen(seed);
    const double scale = std::sqrt(variance / 2.0);
    for (arma::uword i = 0; i < n; ++i) {
        const double u1 = 1.0 - detail::canonical_unit(gen);  // (0, 1]
        const double u2 = detail::canonical_unit(gen);
        const double r = scale * std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * arma::datum::pi * u2;
        out(i) = std::complex<double>(r * std::cos(phi), r * std::sin(phi));
    }
    return out;
}

/** Uniform phases in [0, 2 pi), same pinned generator. */
inline arma::mat uniform_phases(arma::uword rows, arma::uword cols,
                                std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    arma::mat out(rows, cols);
    for (arma::uword i = 0; i < rows; ++i)
        for (arma::uword j = 0; j < cols; ++j)
            out(i, j) = 2.0 * arma::datum::pi * detail::canonical_unit(gen);
    return out;
}

}  // namespace iwpt
