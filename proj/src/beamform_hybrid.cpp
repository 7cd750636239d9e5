#include "iwpt/beamform_hybrid.hpp"

#include <cmath>

#include "iwpt/imaging.hpp"
#include "iwpt/rng.hpp"

namespace iwpt {

namespace {

double wrap_phase(double phi) {
    const double two_pi = 2.0 * arma::datum::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return phi;
}

}  // namespace

arma::cx_mat analog_matrix(const HybridPrecoder& hp) {
    const int nd = hp.chains();
    const int ne = hp.elements_per_chain();
    arma::cx_mat Q(static_cast<arma::uword>(nd) * ne, nd, arma::fill::zeros);
    for (int i = 0; i < nd; ++i)
        for (int l = 0; l < ne; ++l)
            Q(static_cast<arma::uword>(i) * ne + l, i) = std::polar(1.0, hp.phases(i, l));
    return Q;
}

arma::cx_vec compose(const HybridPrecoder& hp) {
    if (hp.weights.n_elem != hp.phases.n_rows)
        throw std::invalid_argument("compose: weight count differs from chain count");
    const int nd = hp.chains();
    const int ne = hp.elements_per_chain();
    arma::cx_vec x(static_cast<arma::uword>(nd) * ne);
    for (int i = 0; i < nd; ++i)
        for (int l = 0; l < ne; ++l)
            x(static_cast<arma::uword>(i) * ne + l) =
                std::polar(1.0, hp.phases(i, l)) * hp.weights(i);
    return x;
}

arma::cx_vec digital_update(const arma::mat& phases, const arma::cx_vec& target,
                            double tx_power) {
    const int nd = static_cast<int>(phases.n_rows);
    const int ne = static_cast<int>(phases.n_cols);
    if (target.n_elem != static_cast<arma::uword>(nd) * ne)
        throw std::invalid_argument("digital_update: target length mismatch");
    HybridPrecoder probe{phases, arma::cx_vec(nd, arma::fill::ones)};
    const arma::cx_mat Q = analog_matrix(probe);
    const arma::cx_vec w = arma::solve(Q.t() * Q, Q.t() * target);
    const double n = arma::norm(w);
    if (n == 0.0) throw std::runtime_error("digital_update: zero projection");
    return w * (std::sqrt(tx_power / ne) / n);
}

arma::mat analog_update(const arma::cx_vec& weights, const arma::cx_vec& target,
                        int elements_per_chain) {
    const int nd = static_cast<int>(weights.n_elem);
    if (target.n_elem != static_cast<arma::uword>(nd) * elements_per_chain)
        throw std::invalid_argument("analog_update: target length mismatch");
    arma::mat phases(nd, elements_per_chain);
    for (int i = 0; i < nd; ++i) {
        if (std::abs(weights(i)) == 0.0)
            throw std::runtime_error("analog_update: zero digital weight");
        const double wi = std::arg(weights(i));
        for (int l = 0; l < elements_per_chain; ++l) {
            const auto t = target(static_cast<arma::uword>(i) * elements_per_chain + l);
            phases(i, l) = wrap_phase(std::arg(t) - wi);
        }
    }
    return phases;
}

AlternatingResult alternating_optimize(const arma::cx_vec& target, int chains,
                                       int elements_per_chain, double tx_power,
                                       int iterations, std::uint64_t seed) {
    if (iterations < 2)
        throw std::invalid_argument("alternating_optimize: needs at least two iterations");
    if (target.n_elem != static_cast<arma::uword>(chains) * elements_per_chain)
        throw std::invalid_argument("alternating_optimize: target length mismatch");

    HybridPrecoder hp;
    hp.phases = uniform_phases(chains, elements_per_chain, seed);
    arma::vec residuals(iterations);
    for (int t = 0; t < iterations; ++t) {
        hp.weights = digital_update(hp.phases, target, tx_power);
        hp.phases = analog_update(hp.weights, target, elements_per_chain);
        residuals(t) = arma::norm(target - compose(hp));
    }
    return AlternatingResult{std::move(hp), std::move(residuals)};
}

HybridResult hybrid_tradeoff(const ChannelSet& ch, double tx_power, double e_r,
                             double zeta, const SolverConfig& cfg, int chains,
                             int elements_per_chain, std::uint64_t seed,
                             int matching_iterations) {
    if (ch.forward.n_cols != static_cast<arma::uword>(chains) * elements_per_chain)
        throw std::invalid_argument("hybrid_tradeoff: array does not factor into chains");

    const TraceKernel kernel = build_trace_kernel(ch);
    HybridResult out;
    out.digital = solve_digital(kernel, ch.receivers, tx_power, e_r, zeta, cfg);

    AlternatingResult ao =
        alternating_optimize(out.digital.beam.weights, chains, elements_per_chain,
                             tx_power, matching_iterations, seed);
    out.precoder = std::move(ao.precoder);
    out.residuals = std::move(ao.residuals);
    out.beam = BeamVector{compose(out.precoder)};

    out.metrics.trace_objective = trace_objective(kernel, out.beam.weights);
    out.metrics.condition_number =
        condition_number(equivalent_channel(ch, out.beam.weights));
    const double p = arma::norm(ch.receivers * out.beam.weights);
    out.metrics.harvested = zeta * p * p;
    return out;
}

}  // namespace iwpt
