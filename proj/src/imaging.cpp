#include "iwpt/imaging.hpp"

#include <limits>
#include <stdexcept>

#include "iwpt/rng.hpp"

namespace iwpt {

arma::cx_mat equivalent_channel(const ChannelSet& ch, const arma::cx_vec& x) {
    if (x.n_elem != ch.forward.n_cols)
        throw std::invalid_argument("equivalent_channel: beam length mismatch");
    const arma::cx_vec v = ch.forward * x;
    return ch.backward * arma::diagmat(v);
}

arma::cx_vec simulate_received(const arma::cx_mat& H, const arma::cx_vec& gamma,
                               double noise_power, std::uint64_t seed) {
    if (gamma.n_elem != H.n_cols)
        throw std::invalid_argument("simulate_received: field length mismatch");
    return H * gamma + complex_gaussian(H.n_rows, noise_power, seed);
}

arma::cx_vec simulate_received(const ChannelSet& ch, const arma::cx_vec& x,
                               const ScatteringField& field, double noise_power,
                               std::uint64_t seed) {
    return simulate_received(equivalent_channel(ch, x), field.gamma, noise_power, seed);
}

arma::cx_vec ls_estimate(const arma::cx_mat& H, const arma::cx_vec& y, double rtol) {
    if (y.n_elem != H.n_rows)
        throw std::invalid_argument("ls_estimate: measurement length mismatch");
    arma::cx_mat U, V;
    arma::vec sv;
    if (!arma::svd_econ(U, sv, V, H))
        throw std::runtime_error("ls_estimate: SVD failed");
    arma::cx_vec out(H.n_cols, arma::fill::zeros);
    if (sv.n_elem == 0) return out;
    const double cutoff = rtol * sv(0);
    for (arma::uword i = 0; i < sv.n_elem; ++i) {
        if (sv(i) <= cutoff || sv(i) == 0.0) continue;
        out += V.col(i) * (arma::cdot(U.col(i), y) / sv(i));
    }
    return out;
}

double condition_number(const arma::cx_mat& H) {
    if (H.n_elem == 0 || arma::norm(H, "fro") == 0.0)
        throw std::invalid_argument("condition_number: zero matrix");
    const arma::vec sv = arma::svd(H);
    const double smax = sv.max();
    const double smin = sv.min();
    if (smin < 1e-14 * smax) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

double rmse(const std::vector<arma::cx_vec>& estimates, const arma::cx_vec& truth) {
    if (estimates.empty()) throw std::invalid_argument("rmse: no estimates");
    double acc = 0.0;
    for (const auto& est : estimates) {
        if (est.n_elem != truth.n_elem)
            throw std::invalid_argument("rmse: estimate length mismatch");
        const double e = arma::norm(est - truth);
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(estimates.size()));
}

}  // namespace iwpt
