#pragma once

#include <armadillo>
#include <string>
#include <vector>

namespace iwpt {

inline constexpr double kSpeedOfLight = 299792458.0;

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/**
 * Planar antenna lattice. Elements sit on a rows x cols grid with uniform
 * spacing, centered on the reference position. The plane is defined by its
 * unit normal; in-plane axes are derived deterministically from it.
 * Element n = i*cols + l is row i, column l (row-major), so the elements of
 * row i form one contiguous index block.
 */
struct ArrayGeometry {
    int rows = 0;
    int cols = 0;
    double spacing = 0.0;           // meters
    arma::vec3 reference{arma::fill::zeros};
    arma::vec3 normal{{1.0, 0.0, 0.0}};

    int count() const { return rows * cols; }
    arma::vec3 row_axis() const;
    arma::vec3 col_axis() const;
    arma::vec3 element_position(int n) const;
    arma::mat element_positions() const;   // 3 x count
    double aperture_extent() const;        // largest side extent, meters
};

/** Square-cell imaging grid, centered on a point, parallel to a plane. */
struct RoiGrid {
    int rows = 0;
    int cols = 0;
    double cell_size = 0.0;         // meters
    arma::vec3 center{arma::fill::zeros};
    arma::vec3 normal{{1.0, 0.0, 0.0}};

    int count() const { return rows * cols; }
    arma::vec3 cell_position(int k) const;  // k = i*cols + j
    arma::mat cell_positions() const;       // 3 x count
};

struct ReceiverSet {
    std::vector<arma::vec3> positions;
    int count() const { return static_cast<int>(positions.size()); }
};

struct Scene {
    ArrayGeometry array;
    RoiGrid roi;
    ReceiverSet receivers;
    double carrier_hz = 0.0;
    double tx_power = 0.0;          // watts
    double noise_power = 0.0;       // watts
    double efficiency = 0.0;        // harvester conversion efficiency
    double pattern_exponent = 1.0;  // cosine exponent q of the element pattern

    double wavelength() const { return kSpeedOfLight / carrier_hz; }
    double far_field_distance() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/** Complex per-cell scattering coefficients of the imaging grid. */
struct ScatteringField {
    arma::cx_vec gamma;
};

/** Reference scene: 13x13 array, 10x10 ROI, three energy receivers, 28 GHz. */
Scene reference_scene();

/** Same physics as reference_scene with a different array / ROI size. */
Scene preset_scene(int array_rows, int array_cols, int roi_rows, int roi_cols);

/** Copy of a scene with the antenna lattice resized (positions rebuilt). */
Scene scene_with_array(const Scene& base, int rows, int cols);

/**
 * Checks geometric and physical consistency: positive powers and spacing,
 * efficiency in (0,1), distinct positions, every ROI cell and receiver inside
 * the radiating near field. Returns the list of violations (empty = valid).
 */
ValidationReport scene_validate(const Scene& s);

/** gamma_k = cell_size * mask_k. Throws if mask size differs from rows*cols. */
ScatteringField scattering_from_bitmap(const std::vector<int>& mask, int rows,
                                       int cols, double cell_size);

}  // namespace iwpt
