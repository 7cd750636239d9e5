#include "iwpt/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace iwpt {

double element_gain(double theta, double q) {
    if (q < 0.0) throw std::invalid_argument("element_gain: negative exponent");
    if (theta > arma::datum::pi / 2.0) return 0.0;
    return std::pow(std::cos(theta), q);
}

namespace {

// One propagation coefficient; cos_theta is the angle cosine seen from the
// plane normal at the element.
std::complex<double> los_entry(double dist, double cos_theta, double lambda, double q) {
    if (dist <= 0.0) throw std::invalid_argument("build_channels: zero propagation distance");
    const double gain = cos_theta < 0.0 ? 0.0 : std::pow(cos_theta, q);
    const double amp = gain * lambda / (4.0 * arma::datum::pi * dist);
    const double phase = -2.0 * arma::datum::pi * dist / lambda;
    return std::polar(amp, phase);
}

arma::cx_mat los_matrix(const arma::mat& points, const arma::mat& elements,
                        const arma::vec3& normal, double lambda, double q) {
    arma::cx_mat out(points.n_cols, elements.n_cols);
    for (arma::uword n = 0; n < elements.n_cols; ++n) {
        for (arma::uword k = 0; k < points.n_cols; ++k) {
            const arma::vec3 delta = points.col(k) - elements.col(n);
            const double d = arma::norm(delta);
            const double c = d > 0.0 ? arma::dot(normal, delta) / d : 0.0;
            out(k, n) = los_entry(d, c, lambda, q);
        }
    }
    return out;
}

}  // namespace

ChannelSet build_channels(const Scene& s) {
    ChannelSet ch;
    ch.wavelength = s.wavelength();
    const arma::mat elements = s.array.element_positions();
    const double q = s.pattern_exponent;

    ch.forward = los_matrix(s.roi.cell_positions(), elements, s.array.normal,
                            ch.wavelength, q);
    ch.backward = ch.forward.st();

    arma::mat rx(3, s.receivers.count());
    for (int m = 0; m < s.receivers.count(); ++m) rx.col(m) = s.receivers.positions[m];
    ch.receivers = los_matrix(rx, elements, s.array.normal, ch.wavelength, q);
    return ch;
}

}  // namespace iwpt
