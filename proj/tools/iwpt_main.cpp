// Command line front end for the IWPT simulator: scene validation, single
// solves, imaging runs and the trade-off / RF-chain sweeps, all exported as
// deterministic CSV (plus a PGM preview of reconstructions).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwpt/harness.hpp"
#include "iwpt/scene_io.hpp"
#include "iwpt/wpt.hpp"

namespace {

struct SceneOpts {
    std::string file;
    std::string preset = "reference";
};

void add_scene_opts(CLI::App* app, SceneOpts& o) {
    app->add_option("--scene", o.file, "Scene config (JSON); overrides --preset");
    app->add_option("--preset", o.preset, "Built-in scene: reference | small")
        ->check(CLI::IsMember({"reference", "small"}));
}

iwpt::Scene make_scene(const SceneOpts& o) {
    if (!o.file.empty()) return iwpt::load_scene(o.file);
    if (o.preset == "small") return iwpt::preset_scene(6, 6, 4, 4);
    return iwpt::reference_scene();
}

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

void print_digital_summary(const iwpt::DigitalSolveResult& r) {
    const auto& d = r.diagnostics;
    std::cout << "iterations        " << d.iterations << "\n"
              << "eta               " << iwpt::format_double(d.eta) << "\n"
              << "rank1 converged   " << (d.rank1_converged ? "yes" : "no") << "\n"
              << "objective settled " << (d.objective_converged ? "yes" : "no") << "\n"
              << "lambda2/lambda1   " << iwpt::format_double(d.final_eig_ratio) << "\n";
    for (const auto& note : d.notes) std::cout << "note: " << note << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integrated imaging / wireless power transfer simulator"};
    app.require_subcommand(1);

    SceneOpts scene_opts;
    std::string out_dir = "out";
    std::uint64_t seed = 1;

    // validate ---------------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "Check a scene for consistency");
    add_scene_opts(validate, scene_opts);

    // solve ------------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Solve one trade-off point");
    add_scene_opts(solve, scene_opts);
    double er_fraction = 0.5;
    std::string arch = "digital";
    int max_iterations = 50;
    double penalty = 0.0;
    int chains = 0, elements = 0;
    solve->add_option("--er", er_fraction, "Harvest threshold as a fraction of the maximum")
        ->check(CLI::Range(0.0, 1.0));
    solve->add_option("--arch", arch, "digital | hybrid")
        ->check(CLI::IsMember({"digital", "hybrid"}));
    solve->add_option("--max-iters", max_iterations, "Outer iteration cap");
    solve->add_option("--penalty", penalty, "Rank penalty weight (0 = automatic)");
    solve->add_option("--chains", chains, "RF chains (hybrid; 0 = array rows)");
    solve->add_option("--elements", elements, "Elements per chain (hybrid; 0 = array cols)");
    solve->add_option("--out", out_dir, "Output directory");
    solve->add_option("--seed", seed, "Base seed");

    // image ------------------------------------------------------------------
    auto* image = app.add_subcommand("image", "Reconstruct the standard pattern");
    add_scene_opts(image, scene_opts);
    int trials = 200;
    std::string image_arch = "digital";
    double image_er = 0.0;
    image->add_option("--er", image_er, "Harvest threshold as a fraction of the maximum")
        ->check(CLI::Range(0.0, 1.0));
    image->add_option("--arch", image_arch,
                      "digital | hybrid | random | imaging | wpt")
        ->check(CLI::IsMember({"digital", "hybrid", "random", "imaging", "wpt"}));
    image->add_option("--trials", trials, "Monte Carlo trials");
    image->add_option("--out", out_dir, "Output directory");
    image->add_option("--seed", seed, "Base seed");
    image->add_option("--chains", chains, "RF chains (hybrid; 0 = array rows)");
    image->add_option("--elements", elements, "Elements per chain (hybrid; 0 = array cols)");

    // tradeoff ---------------------------------------------------------------
    auto* tradeoff = app.add_subcommand("tradeoff", "Threshold sweep over architectures");
    add_scene_opts(tradeoff, scene_opts);
    iwpt::ExperimentConfig exp;
    bool keep_going = false;
    bool dump = false;
    tradeoff->add_option("--er-grid", exp.er_grid, "Threshold fractions")
        ->delimiter(',');
    tradeoff->add_option("--arch", exp.architectures,
                         "Architectures / baselines to run")
        ->delimiter(',');
    tradeoff->add_option("--trials", exp.trials, "Monte Carlo trials per point");
    tradeoff->add_option("--chains", exp.hybrid_chains, "RF chains (0 = array rows)");
    tradeoff->add_option("--elements", exp.hybrid_elements,
                         "Elements per chain (0 = array cols)");
    tradeoff->add_flag("--keep-going", keep_going,
                       "Record failed points instead of aborting");
    tradeoff->add_flag("--dump-channels", dump, "Also export the channel matrices");
    tradeoff->add_option("--out", out_dir, "Output directory");
    tradeoff->add_option("--seed", seed, "Base seed");

    // rfsweep ----------------------------------------------------------------
    auto* rfsweep = app.add_subcommand("rfsweep", "Conditioning vs number of RF chains");
    add_scene_opts(rfsweep, scene_opts);
    std::vector<int> row_counts{4, 8, 13};
    rfsweep->add_option("--rows", row_counts, "Antenna row counts to sweep")
        ->delimiter(',');
    rfsweep->add_option("--out", out_dir, "Output directory");
    rfsweep->add_option("--seed", seed, "Base seed");

    CLI11_PARSE(app, argc, argv);

    try {
        const iwpt::Scene s = make_scene(scene_opts);

        if (validate->parsed()) {
            const iwpt::ValidationReport rep = iwpt::scene_validate(s);
            if (rep.ok()) {
                std::cout << "scene ok\n";
                return 0;
            }
            for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
            return 1;
        }

        const iwpt::ChannelSet ch = iwpt::build_channels(s);
        const double cap = iwpt::e_max(ch.receivers, s.tx_power, s.efficiency);

        if (solve->parsed()) {
            iwpt::SolverConfig cfg;
            cfg.max_iterations = max_iterations;
            if (penalty > 0.0) cfg.penalty = penalty;
            const double er_watts = er_fraction * cap;
            std::cout << "threshold         " << iwpt::format_double(er_watts)
                      << " W (" << iwpt::format_double(er_fraction) << " of max)\n";
            if (arch == "digital") {
                const auto r = iwpt::solve_digital(iwpt::build_trace_kernel(ch),
                                                   ch.receivers, s.tx_power, er_watts,
                                                   s.efficiency, cfg);
                print_digital_summary(r);
                const double g = arma::norm(ch.receivers * r.beam.weights);
                std::cout << "harvested         "
                          << iwpt::format_double(s.efficiency * g * g) << " W\n";
                iwpt::write_beam_csv(out_path(out_dir, "beam.csv"), r.beam.weights);
                iwpt::write_diagnostics_csv(out_path(out_dir, "diagnostics.csv"),
                                            r.diagnostics);
            } else {
                const auto r = iwpt::hybrid_tradeoff(
                    ch, s.tx_power, er_watts, s.efficiency, cfg,
                    chains > 0 ? chains : s.array.rows,
                    elements > 0 ? elements : s.array.cols, seed);
                print_digital_summary(r.digital);
                std::cout << "harvested         "
                          << iwpt::format_double(r.metrics.harvested) << " W\n"
                          << "matching residual "
                          << iwpt::format_double(r.residuals.back()) << "\n";
                iwpt::write_beam_csv(out_path(out_dir, "beam.csv"), r.beam.weights);
                iwpt::write_diagnostics_csv(out_path(out_dir, "diagnostics.csv"),
                                            r.digital.diagnostics);
                iwpt::write_precoder_csv(out_path(out_dir, "precoder_phases.csv"),
                                         out_path(out_dir, "precoder_weights.csv"),
                                         r.precoder);
            }
            std::cout << "wrote " << out_dir << "\n";
            return 0;
        }

        if (image->parsed()) {
            iwpt::SolverConfig cfg;
            const double er_watts = image_er * cap;
            arma::cx_vec beam;
            if (image_arch == "digital") {
                beam = iwpt::solve_digital(iwpt::build_trace_kernel(ch), ch.receivers,
                                           s.tx_power, er_watts, s.efficiency, cfg)
                           .beam.weights;
            } else if (image_arch == "hybrid") {
                beam = iwpt::hybrid_tradeoff(ch, s.tx_power, er_watts, s.efficiency,
                                             cfg, chains > 0 ? chains : s.array.rows,
                                             elements > 0 ? elements : s.array.cols,
                                             seed)
                           .beam.weights;
            } else {
                const auto kind = image_arch == "random" ? iwpt::BaselineKind::random
                                  : image_arch == "imaging"
                                      ? iwpt::BaselineKind::imaging_only
                                      : iwpt::BaselineKind::wpt_only;
                beam = iwpt::baseline_beam(kind, ch, s.tx_power, s.efficiency, cfg,
                                           seed)
                           .weights;
            }
            const iwpt::ScatteringField truth = iwpt::scattering_from_bitmap(
                iwpt::default_pattern(s.roi.rows, s.roi.cols), s.roi.rows, s.roi.cols,
                s.roi.cell_size);
            const auto res =
                iwpt::run_imaging_experiment(s, ch, beam, truth, trials, seed);
            const double g = arma::norm(ch.receivers * beam);
            std::cout << "rmse              " << iwpt::format_double(res.rmse) << "\n"
                      << "condition number  "
                      << iwpt::format_double(iwpt::condition_number(
                             iwpt::equivalent_channel(ch, beam)))
                      << "\n"
                      << "harvested         "
                      << iwpt::format_double(s.efficiency * g * g) << " W\n";
            iwpt::write_beam_csv(out_path(out_dir, "beam.csv"), beam);
            iwpt::write_reconstruction_csv(out_path(out_dir, "reconstruction.csv"),
                                           res.magnitude);
            iwpt::write_reconstruction_pgm(out_path(out_dir, "reconstruction.pgm"),
                                           res.magnitude);
            std::cout << "wrote " << out_dir << "\n";
            return 0;
        }

        if (tradeoff->parsed()) {
            exp.seed = seed;
            exp.keep_going = keep_going;
            const auto points = iwpt::run_tradeoff_sweep(s, ch, exp);
            iwpt::write_tradeoff_csv(out_path(out_dir, "tradeoff.csv"), points);
            if (dump) iwpt::dump_channels(out_dir, ch);
            std::printf("%-10s %-6s %-12s %-12s %-10s %-8s\n", "arch", "er", "power_w",
                        "cond", "rmse", "status");
            for (const auto& p : points)
                std::printf("%-10s %-6.3g %-12.5g %-12.5g %-10.4g %-8s\n",
                            p.architecture.c_str(), p.er_fraction, p.achieved_power,
                            p.condition_number, p.rmse, p.status.c_str());
            std::cout << "wrote " << out_dir << "\n";
            return 0;
        }

        if (rfsweep->parsed()) {
            iwpt::ExperimentConfig cfg;
            cfg.seed = seed;
            const auto points = iwpt::run_rf_chain_sweep(s, row_counts, cfg);
            iwpt::write_rfsweep_csv(out_path(out_dir, "rfsweep.csv"), points);
            for (const auto& p : points)
                std::printf("rows=%-3d N=%-4d er=%-5.3g cond_digital=%-12.5g "
                            "cond_hybrid=%-12.5g\n",
                            p.chains, p.antennas, p.er_fraction, p.cond_digital,
                            p.cond_hybrid);
            std::cout << "wrote " << out_dir << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
