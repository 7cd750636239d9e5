#include "iwpt/scene.hpp"

#include <cmath>
#include <stdexcept>

namespace iwpt {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
    if (watts <= 0.0) throw std::invalid_argument("watts_to_dbm: non-positive power");
    return 10.0 * std::log10(watts) + 30.0;
}

namespace {

// Deterministic in-plane basis for a given unit normal. For the usual
// x-facing plane this yields columns along +y and rows along +z.
void plane_axes(const arma::vec3& normal, arma::vec3& row_axis, arma::vec3& col_axis) {
    const arma::vec3 z_hat{{0.0, 0.0, 1.0}};
    const arma::vec3 x_hat{{1.0, 0.0, 0.0}};
    arma::vec3 c = arma::cross(z_hat, normal);
    if (arma::norm(c) < 1e-12) c = arma::cross(normal, x_hat);
    col_axis = arma::normalise(c);
    row_axis = arma::normalise(arma::cross(normal, col_axis));
}

arma::vec3 lattice_position(const arma::vec3& center, const arma::vec3& row_axis,
                            const arma::vec3& col_axis, double pitch, int rows,
                            int cols, int i, int j) {
    const double di = i - 0.5 * (rows - 1);
    const double dj = j - 0.5 * (cols - 1);
    return center + pitch * (di * row_axis + dj * col_axis);
}

}  // namespace

arma::vec3 ArrayGeometry::row_axis() const {
    arma::vec3 r, c;
    plane_axes(normal, r, c);
    return r;
}

arma::vec3 ArrayGeometry::col_axis() const {
    arma::vec3 r, c;
    plane_axes(normal, r, c);
    return c;
}

arma::vec3 ArrayGeometry::element_position(int n) const {
    arma::vec3 r, c;
    plane_axes(normal, r, c);
    return lattice_position(reference, r, c, spacing, rows, cols, n / cols, n % cols);
}

arma::mat ArrayGeometry::element_positions() const {
    arma::vec3 r, c;
    plane_axes(normal, r, c);
    arma::mat out(3, count());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.col(i * cols + j) =
                lattice_position(reference, r, c, spacing, rows, cols, i, j);
    return out;
}

double ArrayGeometry::aperture_extent() const {
    return spacing * std::max(rows - 1, cols - 1);
}

arma::vec3 RoiGrid::cell_position(int k) const {
    arma::vec3 r, c;
    plane_axes(normal, r, c);
    return lattice_position(center, r, c, cell_size, rows, cols, k / cols, k % cols);
}

arma::mat RoiGrid::cell_positions() const {
    arma::vec3 r, c;
    plane_axes(normal, r, c);
    arma::mat out(3, count());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.col(i * cols + j) =
                lattice_position(center, r, c, cell_size, rows, cols, i, j);
    return out;
}

double Scene::far_field_distance() const {
    const double d = array.aperture_extent();
    return 2.0 * d * d / wavelength();
}

namespace {

Scene scene_base() {
    Scene s;
    s.carrier_hz = 28e9;
    s.tx_power = dbm_to_watts(30.0);
    s.noise_power = dbm_to_watts(-170.0 + 10.0 * std::log10(120e3));
    s.efficiency = 0.5;
    s.pattern_exponent = 1.0;
    s.array.spacing = 1.5 * s.wavelength();
    s.array.reference = arma::vec3{arma::fill::zeros};
    s.array.normal = arma::vec3{{1.0, 0.0, 0.0}};
    s.roi.normal = arma::vec3{{1.0, 0.0, 0.0}};
    return s;
}

}  // namespace

Scene preset_scene(int array_rows, int array_cols, int roi_rows, int roi_cols) {
    Scene s = scene_base();
    s.array.rows = array_rows;
    s.array.cols = array_cols;

    // Scale-free layout anchored to the aperture's far-field distance, so
    // every preset keeps the same angular relationships: the ROI sits at 40%
    // of the boundary and subtends half its own depth, which keeps the cell
    // pitch near one beamwidth, and the receivers sit well outside the ROI
    // wedge at comparable ranges.
    const double depth = 0.4 * s.far_field_distance();
    s.roi.rows = roi_rows;
    s.roi.cols = roi_cols;
    s.roi.cell_size = 0.5 * depth / std::max(roi_rows, roi_cols);
    s.roi.center = arma::vec3{{depth, 0.0, 0.0}};

    s.receivers.positions = {arma::vec3{{0.75 * depth, 0.50 * depth, 0.50 * depth}},
                             arma::vec3{{0.50 * depth, -0.75 * depth, 0.0}},
                             arma::vec3{{0.75 * depth, -0.50 * depth, 0.0}}};
    return s;
}

Scene reference_scene() {
    Scene s = scene_base();
    s.array.rows = 13;
    s.array.cols = 13;
    s.roi.rows = 10;
    s.roi.cols = 10;
    s.roi.cell_size = 0.1;
    s.roi.center = arma::vec3{{2.0, 0.0, 0.0}};
    s.receivers.positions = {arma::vec3{{1.5, 1.0, 1.0}},
                             arma::vec3{{1.0, -1.5, 0.0}},
                             arma::vec3{{1.5, -1.0, 0.0}}};
    return s;
}

Scene scene_with_array(const Scene& base, int rows, int cols) {
    Scene s = base;
    s.array.rows = rows;
    s.array.cols = cols;
    return s;
}

ValidationReport scene_validate(const Scene& s) {
    ValidationReport rep;
    auto flag = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    if (s.array.rows < 1 || s.array.cols < 1) flag("array has no elements");
    if (s.array.spacing <= 0.0) flag("array spacing is not positive");
    if (s.roi.count() > 0 && s.roi.cell_size <= 0.0) flag("ROI cell size is not positive");
    if (s.carrier_hz <= 0.0) flag("carrier frequency is not positive");
    if (s.tx_power <= 0.0) flag("transmit power is not positive");
    if (s.noise_power <= 0.0) flag("noise power is not positive");
    if (s.efficiency <= 0.0 || s.efficiency >= 1.0)
        flag("conversion efficiency out of range (0, 1)");
    if (s.pattern_exponent < 0.0) flag("pattern exponent is negative");
    if (std::abs(arma::norm(s.array.normal) - 1.0) > 1e-9)
        flag("array normal is not a unit vector");
    if (s.roi.count() > 0 && std::abs(arma::norm(s.roi.normal) - 1.0) > 1e-9)
        flag("ROI normal is not a unit vector");
    if (!rep.ok()) return rep;

    const arma::mat ants = s.array.element_positions();
    const arma::mat cells = s.roi.cell_positions();
    const double d_ff = s.far_field_distance();

    auto against_array = [&](const arma::vec3& p, const std::string& what, int idx) {
        double d_max = 0.0, d_min = arma::datum::inf;
        for (arma::uword n = 0; n < ants.n_cols; ++n) {
            const double d = arma::norm(p - ants.col(n));
            d_max = std::max(d_max, d);
            d_min = std::min(d_min, d);
        }
        if (d_min < 1e-9)
            flag(what + " " + std::to_string(idx) + " coincides with antenna");
        if (d_max >= d_ff)
            flag(what + " " + std::to_string(idx) + " outside the radiating near field");
    };

    for (int k = 0; k < s.roi.count(); ++k)
        against_array(cells.col(k), "ROI cell", k);
    for (int m = 0; m < s.receivers.count(); ++m)
        against_array(s.receivers.positions[m], "receiver", m);
    return rep;
}

ScatteringField scattering_from_bitmap(const std::vector<int>& mask, int rows,
                                       int cols, double cell_size) {
    if (static_cast<int>(mask.size()) != rows * cols)
        throw std::invalid_argument("scattering_from_bitmap: mask size mismatch");
    ScatteringField f;
    f.gamma.set_size(mask.size());
    for (std::size_t k = 0; k < mask.size(); ++k) {
        if (mask[k] != 0 && mask[k] != 1)
            throw std::invalid_argument("scattering_from_bitmap: mask is not binary");
        f.gamma(k) = std::complex<double>(cell_size * mask[k], 0.0);
    }
    return f;
}

}  // namespace iwpt
