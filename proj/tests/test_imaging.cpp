#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <armadillo>
#include <complex>
#include <vector>

#include "iwpt/imaging.hpp"
#include "iwpt/rng.hpp"
#include "util.hpp"

using namespace iwpt;
using cx = std::complex<double>;

namespace {

/** Entry-by-entry oracle: H(n, k) = backward(n, k) * sum_n' forward(k, n') x_n'. */
arma::cx_mat equivalent_channel_oracle(const ChannelSet& ch, const arma::cx_vec& x) {
    const arma::uword n = ch.backward.n_rows;
    const arma::uword k = ch.backward.n_cols;
    arma::cx_mat h(n, k);
    for (arma::uword col = 0; col < k; ++col) {
        cx illum = 0.0;
        for (arma::uword j = 0; j < ch.forward.n_cols; ++j)
            illum += ch.forward(col, j) * x(j);
        for (arma::uword row = 0; row < n; ++row)
            h(row, col) = ch.backward(row, col) * illum;
    }
    return h;
}

}  // namespace

TEST_CASE("equivalent channel matches the double-loop oracle") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        const Scene s = testutil::random_scene(seed);
        const ChannelSet ch = build_channels(s);
        const arma::cx_vec x =
            testutil::random_beam(ch.forward.n_cols, s.tx_power, mix_seed(seed, 5));
        const arma::cx_mat h = equivalent_channel(ch, x);
        REQUIRE(h.n_rows == ch.backward.n_rows);
        REQUIRE(h.n_cols == ch.backward.n_cols);
        const arma::cx_mat oracle = equivalent_channel_oracle(ch, x);
        CHECK(arma::norm(h - oracle, "fro") < 1e-12 * (1.0 + arma::norm(oracle, "fro")));
    }
}

TEST_CASE("equivalent channel is zero for a zero beam and linear in the beam") {
    const Scene s = testutil::random_scene(31);
    const ChannelSet ch = build_channels(s);
    const arma::uword n = ch.forward.n_cols;
    CHECK(arma::norm(equivalent_channel(ch, arma::cx_vec(n, arma::fill::zeros)), "fro") ==
          0.0);
    const arma::cx_vec x = testutil::random_beam(n, 1.0, 99);
    const cx alpha(0.3, -1.2);
    CHECK(arma::norm(equivalent_channel(ch, alpha * x) - alpha * equivalent_channel(ch, x),
                     "fro") < 1e-12);
}

TEST_CASE("single-cell channel is the scaled backward column") {
    Scene s = testutil::random_scene(32);
    s.roi.rows = 1;
    s.roi.cols = 1;
    const ChannelSet ch = build_channels(s);
    const arma::cx_vec x = testutil::random_beam(ch.forward.n_cols, s.tx_power, 7);
    const arma::cx_mat h = equivalent_channel(ch, x);
    REQUIRE(h.n_cols == 1);
    const cx illum = arma::as_scalar(ch.forward * x);
    CHECK(arma::norm(h.col(0) - illum * ch.backward.col(0)) < 1e-14);
}

TEST_CASE("received signal simulation") {
    const Scene s = testutil::random_scene(33);
    const ChannelSet ch = build_channels(s);
    const arma::cx_vec x = testutil::random_beam(ch.forward.n_cols, s.tx_power, 3);
    const arma::cx_mat h = equivalent_channel(ch, x);
    const arma::cx_vec gamma = complex_gaussian(h.n_cols, 0.01, 17);

    SUBCASE("noiseless output is exactly H gamma") {
        CHECK(arma::norm(simulate_received(h, gamma, 0.0, 123) - h * gamma) == 0.0);
    }
    SUBCASE("zero field and zero noise give silence") {
        const arma::cx_vec y = simulate_received(
            h, arma::cx_vec(h.n_cols, arma::fill::zeros), 0.0, 1);
        CHECK(arma::norm(y) == 0.0);
    }
    SUBCASE("the same seed reproduces the same noise") {
        const arma::cx_vec a = simulate_received(h, gamma, 1e-6, 42);
        const arma::cx_vec b = simulate_received(h, gamma, 1e-6, 42);
        const arma::cx_vec c = simulate_received(h, gamma, 1e-6, 43);
        CHECK(arma::norm(a - b) == 0.0);
        CHECK(arma::norm(a - c) > 0.0);
    }
    SUBCASE("noise power matches the requested variance") {
        const arma::uword big = 4000;
        const arma::cx_vec noise = complex_gaussian(big, 2.5, 77);
        const double measured = arma::accu(arma::square(arma::abs(noise))) / big;
        CHECK(measured == doctest::Approx(2.5).epsilon(0.1));
    }
    SUBCASE("scene-level overload agrees with the matrix form") {
        ScatteringField field;
        field.gamma = gamma;
        const arma::cx_vec y1 = simulate_received(ch, x, field, 1e-9, 5);
        const arma::cx_vec y2 = simulate_received(h, gamma, 1e-9, 5);
        CHECK(arma::norm(y1 - y2) < 1e-14);
    }
}

TEST_CASE("least-squares estimate") {
    SUBCASE("identity-padded system reads the measurements straight off") {
        const arma::uword n = 6;
        const arma::uword k = 4;
        arma::cx_mat h(n, k, arma::fill::zeros);
        h.head_rows(k) = arma::cx_mat(arma::eye(k, k), arma::mat(k, k, arma::fill::zeros));
        const arma::cx_vec y = complex_gaussian(n, 1.0, 9);
        const arma::cx_vec est = ls_estimate(h, y);
        CHECK(arma::norm(est - y.head(k)) < 1e-12);
    }
    SUBCASE("noiseless round trip recovers the field") {
        const Scene s = testutil::random_scene(34);
        const ChannelSet ch = build_channels(s);
        const arma::cx_vec x = testutil::random_beam(ch.forward.n_cols, s.tx_power, 4);
        const arma::cx_mat h = equivalent_channel(ch, x);
        const arma::cx_vec gamma = complex_gaussian(h.n_cols, 0.04, 11);
        const arma::cx_vec est = ls_estimate(h, h * gamma);
        CHECK(arma::norm(est - gamma) < 1e-8 * (1.0 + arma::norm(gamma)));
    }
    SUBCASE("zero measurements give a zero estimate") {
        const arma::cx_mat h(5, 3, arma::fill::randu);
        CHECK(arma::norm(ls_estimate(h, arma::cx_vec(5, arma::fill::zeros))) == 0.0);
    }
    SUBCASE("near-singular directions are truncated, not amplified") {
        arma::cx_mat h(3, 2, arma::fill::zeros);
        h(0, 0) = 1.0;
        h(1, 1) = 1e-14;  // below the default cutoff
        const arma::cx_vec y{cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)};
        const arma::cx_vec est = ls_estimate(h, y);
        CHECK(est.is_finite());
        CHECK(std::abs(est(0) - cx(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(est(1)) == 0.0);  // truncated direction contributes nothing
    }
}

TEST_CASE("condition number") {
    SUBCASE("unitary matrices have condition number one") {
        arma::cx_mat q, r;
        arma::qr(q, r, arma::cx_mat(4, 4, arma::fill::randn));
        CHECK(condition_number(q) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("diagonal example") {
        arma::cx_mat h(2, 2, arma::fill::zeros);
        h(0, 0) = 2.0;
        h(1, 1) = 1.0;
        CHECK(condition_number(h) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("matches an eigenvalue oracle on a random tall matrix") {
        arma::arma_rng::set_seed(4321);
        const arma::cx_mat h(7, 4, arma::fill::randn);
        const arma::vec ev = arma::eig_sym(arma::cx_mat(h.t() * h));
        const double oracle = std::sqrt(ev.max() / ev.min());
        CHECK(condition_number(h) == doctest::Approx(oracle).epsilon(1e-9));
    }
    SUBCASE("invariant under complex scaling") {
        arma::arma_rng::set_seed(77);
        const arma::cx_mat h(5, 3, arma::fill::randn);
        const cx c(0.3, -2.0);
        CHECK(condition_number(c * h) ==
              doctest::Approx(condition_number(h)).epsilon(1e-10));
    }
    SUBCASE("rank deficiency maps to +inf") {
        const arma::cx_vec u = complex_gaussian(4, 1.0, 1);
        const arma::cx_vec v = complex_gaussian(2, 1.0, 2);
        const arma::cx_mat h = u * v.st();  // rank one, two columns
        CHECK(std::isinf(condition_number(h)));
    }
    SUBCASE("the zero matrix is rejected") {
        CHECK_THROWS_AS(condition_number(arma::cx_mat(3, 3, arma::fill::zeros)),
                        std::invalid_argument);
    }
}

TEST_CASE("root-mean-square error") {
    const arma::cx_vec truth{cx(1.0, 0.0), cx(0.0, 1.0)};

    SUBCASE("perfect estimates give zero") {
        CHECK(rmse({truth, truth, truth}, truth) == 0.0);
    }
    SUBCASE("single trial with error norm 3") {
        arma::cx_vec est = truth;
        est(0) += 3.0;
        CHECK(rmse({est}, truth) == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("two trials with error norms 0 and 2 average to sqrt(2)") {
        arma::cx_vec off = truth;
        off(1) += cx(0.0, 2.0);
        CHECK(rmse({truth, off}, truth) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("order of the trials does not matter") {
        arma::cx_vec off = truth;
        off(0) += cx(0.5, -0.25);
        CHECK(rmse({truth, off}, truth) == doctest::Approx(rmse({off, truth}, truth)));
    }
    SUBCASE("an empty trial list is rejected") {
        CHECK_THROWS_AS(rmse({}, truth), std::invalid_argument);
    }
}

TEST_CASE("estimator error tracks the noise level") {
    // For a fixed full-column-rank H, the LS error scales as sqrt(noise power):
    // doubling the variance should raise the RMSE by sqrt(2) with shared seeds.
    const Scene s = testutil::random_scene(36);
    const ChannelSet ch = build_channels(s);
    const arma::cx_vec x = testutil::random_beam(ch.forward.n_cols, s.tx_power, 6);
    const arma::cx_mat h = equivalent_channel(ch, x);
    const arma::cx_vec gamma = complex_gaussian(h.n_cols, 0.01, 13);
    const double sigma2 = 1e-18;

    std::vector<arma::cx_vec> est_lo, est_hi;
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t seed = mix_seed(900, t);
        est_lo.push_back(ls_estimate(h, simulate_received(h, gamma, sigma2, seed)));
        est_hi.push_back(ls_estimate(h, simulate_received(h, gamma, 2.0 * sigma2, seed)));
    }
    const double ratio = rmse(est_hi, gamma) / rmse(est_lo, gamma);
    CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.10));
}
