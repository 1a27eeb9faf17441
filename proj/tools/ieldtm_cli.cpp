// Command-line runner: single solves, sweeps and the comparison-table presets.
//
// Exit codes: 0 success, 2 invalid configuration, 3 solver failure.

#include "ieldtm/error.hpp"
#include "ieldtm/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitInvalidConfig = 2;
constexpr int kExitSolverFailure = 3;

/// Flags mirroring the configuration keys; only flags given on the command
/// line override the file.
struct ConfigFlags {
    std::string config_file;
    std::optional<std::string> problem, name, boundary_mode, solver, output_dir;
    std::optional<int> N, K, M, Mx, My, Mz, S, density, time_samples, picard_max_iters;
    std::optional<double> theta, theta_x, theta_y, theta_z, t_f, D, Dx, Dy, Dz, Vx, Vy, Vz;
    std::optional<double> viscosity, picard_tol, picard_relaxation;
    std::optional<std::vector<double>> bounds, slices;
    bool no_artifacts = false;

    void attach(CLI::App& app) {
        app.add_option("--config", config_file, "JSON configuration file")->check(CLI::ExistingFile);
        app.add_option("--problem", problem, "1, 2, 3, 4, manufactured, manufactured3d, trilinear3d, constant_burgers");
        app.add_option("--name", name, "run name used in CSV rows");
        app.add_option("--N", N, "Chebyshev order in time");
        app.add_option("--K", K, "Taylor order");
        app.add_option("--M", M, "elements per axis");
        app.add_option("--Mx", Mx);
        app.add_option("--My", My);
        app.add_option("--Mz", Mz);
        app.add_option("--S", S, "edge partition count");
        app.add_option("--theta", theta, "direction parameter for every axis");
        app.add_option("--theta_x", theta_x);
        app.add_option("--theta_y", theta_y);
        app.add_option("--theta_z", theta_z);
        app.add_option("--t_f", t_f, "final time");
        app.add_option("--D", D, "diffusion for every axis");
        app.add_option("--Dx", Dx);
        app.add_option("--Dy", Dy);
        app.add_option("--Dz", Dz);
        app.add_option("--Vx", Vx);
        app.add_option("--Vy", Vy);
        app.add_option("--Vz", Vz);
        app.add_option("--bounds", bounds, "a b c d [e f]")->expected(4, 6);
        app.add_option("--viscosity", viscosity, "Burgers kinematic viscosity");
        app.add_option("--boundary_mode", boundary_mode, "value_only or value_plus_tangential");
        app.add_option("--solver", solver, "sparse_qr or dense_cod");
        app.add_option("--density", density, "error samples per element edge");
        app.add_option("--time_samples", time_samples, "uniform error-sampling times (0: 4N+1)");
        app.add_option("--slices", slices, "grid-dump times")->expected(1, -1);
        app.add_option("--picard_tol", picard_tol);
        app.add_option("--picard_max_iters", picard_max_iters);
        app.add_option("--picard_relaxation", picard_relaxation);
        app.add_option("--output_dir", output_dir, "output directory (IELDTM_OUTPUT_DIR overrides)");
        app.add_flag("--no_artifacts", no_artifacts, "skip CSV and grid dumps");
    }

    [[nodiscard]] json merged() const {
        json j = json::object();
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            try {
                j = json::parse(in);
            } catch (const json::exception& ex) {
                throw ieldtm::ConfigError("cannot parse " + config_file + ": " + ex.what());
            }
        }
        auto put = [&](const char* key, const auto& opt) {
            if (opt) j[key] = *opt;
        };
        put("problem", problem);
        put("name", name);
        put("boundary_mode", boundary_mode);
        put("solver", solver);
        put("output_dir", output_dir);
        put("N", N);
        put("K", K);
        put("M", M);
        put("Mx", Mx);
        put("My", My);
        put("Mz", Mz);
        put("S", S);
        put("density", density);
        put("time_samples", time_samples);
        put("picard_max_iters", picard_max_iters);
        put("theta", theta);
        put("theta_x", theta_x);
        put("theta_y", theta_y);
        put("theta_z", theta_z);
        put("t_f", t_f);
        put("D", D);
        put("Dx", Dx);
        put("Dy", Dy);
        put("Dz", Dz);
        put("Vx", Vx);
        put("Vy", Vy);
        put("Vz", Vz);
        put("viscosity", viscosity);
        put("picard_tol", picard_tol);
        put("picard_relaxation", picard_relaxation);
        put("bounds", bounds);
        put("slices", slices);
        if (no_artifacts) j["write_artifacts"] = false;
        return j;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IELDTM advection-diffusion and Burgers benchmark runner"};
    app.require_subcommand(1);

    ConfigFlags solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "solve one configuration");
    solve_flags.attach(*solve);

    ConfigFlags sweep_flags;
    std::string sweep_axis;
    std::vector<double> sweep_values;
    CLI::App* sweep = app.add_subcommand("sweep", "refinement sweep along one axis");
    sweep_flags.attach(*sweep);
    sweep->add_option("--axis", sweep_axis, "K, M, S or theta");
    sweep->add_option("--values", sweep_values, "sweep values")->expected(1, -1);

    ieldtm::TableRunOptions table_options;
    std::string table_dir = "ieldtm_out";
    CLI::App* table1 = app.add_subcommand("table1", "Problem 1 comparison table");
    CLI::App* table2 = app.add_subcommand("table2", "Problem 3 comparison table");
    for (CLI::App* t : {table1, table2}) {
        t->add_option("--meshes", table_options.meshes, "subset of M = M_x = M_y rows")->expected(1, -1);
        t->add_option("--output_dir", table_dir, "output directory (IELDTM_OUTPUT_DIR overrides)");
        t->add_option("--density", table_options.density, "error samples per element edge");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidConfig;
    }

    try {
        if (*solve) {
            const ieldtm::RunConfig config = ieldtm::RunConfig::from_json(solve_flags.merged());
            const ieldtm::RunOutcome outcome = ieldtm::run_single(config);
            std::cout << ieldtm::kSummaryVersion << "\n"
                      << ieldtm::summary_header() << "\n"
                      << ieldtm::summary_row(config, outcome) << "\n";
            std::cerr << "runtime " << outcome.runtime_seconds << " s\n";
        } else if (*sweep) {
            json j = sweep_flags.merged();
            if (!sweep_axis.empty()) j["sweep_axis"] = sweep_axis;
            if (!sweep_values.empty()) j["sweep_values"] = sweep_values;
            const ieldtm::RunConfig config = ieldtm::RunConfig::from_json(j);
            const ieldtm::SweepResult result = ieldtm::run_sweep(config);
            for (const auto& p : result.points) {
                std::cout << p.value << ": ";
                if (p.outcome)
                    std::cout << "e_inf " << p.outcome->report.e_inf << " e_inf_final "
                              << p.outcome->report.e_inf_final << "\n";
                else
                    std::cout << "failed (" << p.failure << ")\n";
            }
            if (result.slope) std::cout << "slope " << *result.slope << "\n";
        } else {
            table_options.output_dir = table_dir;
            if (*table1)
                ieldtm::run_table1(table_options);
            else
                ieldtm::run_table2(table_options);
        }
    } catch (const ieldtm::InvalidParameter& ex) {
        std::cerr << "error: invalid configuration: " << ex.what() << "\n";
        return kExitInvalidConfig;
    } catch (const ieldtm::UnderdeterminedSystem& ex) {
        std::cerr << "error: invalid configuration: " << ex.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& ex) {
        std::cerr << "error: solver failure: " << ex.what() << "\n";
        return kExitSolverFailure;
    }
    return 0;
}
