#pragma once

#include <armadillo>
#include <cstdint>
#include <string>
#include <vector>

#include "iwpt/beamform_hybrid.hpp"
#include "iwpt/imaging.hpp"
#include "iwpt/scene.hpp"

namespace iwpt {

enum class BaselineKind { random, imaging_only, wpt_only };

/**
 * Reference beams: seeded random Gaussian at full power, the unconstrained
 * imaging solve (threshold 0), or the sum-power optimal beam.
 */
BeamVector baseline_beam(BaselineKind kind, const ChannelSet& ch, double tx_power,
                         double zeta, const SolverConfig& cfg, std::uint64_t seed);

/** Repo-standard binary test pattern for a rows x cols grid. */
std::vector<int> default_pattern(int rows, int cols);

struct ImagingExperimentResult {
    double rmse = 0.0;
    arma::cx_vec mean_estimate;
    arma::mat magnitude;            // |mean estimate| folded to the ROI grid
};

/**
 * Monte Carlo imaging run: `trials` noisy measurements with per-trial seeds
 * derived from `seed`, least-squares estimates, aggregate RMSE.
 */
ImagingExperimentResult run_imaging_experiment(const Scene& s, const ChannelSet& ch,
                                               const arma::cx_vec& beam,
                                               const ScatteringField& field,
                                               int trials, std::uint64_t seed);

struct ExperimentConfig {
    std::vector<double> er_grid{0.0, 0.25, 0.5, 0.75, 1.0};  // fractions of e_max
    std::vector<std::string> architectures{"digital", "hybrid", "random",
                                           "imaging", "wpt"};
    int trials = 200;
    std::uint64_t seed = 1;
    SolverConfig solver;
    int hybrid_chains = 0;          // 0 = array rows
    int hybrid_elements = 0;        // 0 = array cols
    bool keep_going = false;
};

struct TradeoffPoint {
    std::string architecture;
    double er_fraction = 0.0;
    double er_watts = 0.0;
    double achieved_power = 0.0;    // zeta * ||G x||^2 of the returned beam
    double trace_objective = 0.0;
    double condition_number = 0.0;
    double rmse = 0.0;
    bool meets_threshold = false;
    std::string status = "ok";
};

/**
 * Imaging / power trade-off sweep over the threshold grid for the selected
 * solver architectures, with the selected baselines appended once each.
 * Deterministic for a fixed config. Throws on a failed point unless
 * cfg.keep_going is set (the point is then tagged in its status column).
 */
std::vector<TradeoffPoint> run_tradeoff_sweep(const Scene& s, const ChannelSet& ch,
                                              const ExperimentConfig& cfg);

struct RfChainSweepPoint {
    int chains = 0;
    int elements_per_chain = 0;
    int antennas = 0;
    double er_fraction = 0.0;
    double cond_digital = 0.0;
    double cond_hybrid = 0.0;
};

/**
 * Rebuilds the scene for each requested number of antenna rows and compares
 * digital against hybrid conditioning at thresholds 0 and 0.15 of e_max.
 */
std::vector<RfChainSweepPoint> run_rf_chain_sweep(const Scene& base,
                                                  const std::vector<int>& row_counts,
                                                  const ExperimentConfig& cfg);

// deterministic text export; doubles are written with to_chars round-trip format
std::string format_double(double v);
void write_tradeoff_csv(const std::string& path, const std::vector<TradeoffPoint>& pts);
void write_rfsweep_csv(const std::string& path, const std::vector<RfChainSweepPoint>& pts);
void write_reconstruction_csv(const std::string& path, const arma::mat& magnitude);
void write_reconstruction_pgm(const std::string& path, const arma::mat& magnitude);
void write_beam_csv(const std::string& path, const arma::cx_vec& x);
void write_diagnostics_csv(const std::string& path, const SolveDiagnostics& d);
void write_precoder_csv(const std::string& phases_path, const std::string& weights_path,
                        const HybridPrecoder& hp);
void write_channel_csv(const std::string& path, const arma::cx_mat& m);
void dump_channels(const std::string& dir, const ChannelSet& ch);

}  // namespace iwpt
