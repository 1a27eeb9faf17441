#pragma once

// Benchmark driver: run configuration, single solves, parameter sweeps and the
// comparison-table presets, with their CSV artifacts.

#include "ieldtm/error.hpp"
#include "ieldtm/error_report.hpp"
#include "ieldtm/least_squares.hpp"
#include "ieldtm/mesh.hpp"
#include "ieldtm/problems.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ieldtm {

inline constexpr const char* kSummaryVersion = "# ieldtm-summary v1";
inline constexpr const char* kOutputDirEnv = "IELDTM_OUTPUT_DIR";

/// The configuration could not be parsed or violates a precondition.
class ConfigError : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

struct RunConfig {
    /// "1".."4", "manufactured" (alias "manufactured2d"), "manufactured3d",
    /// "trilinear3d" or "constant_burgers".
    std::string problem = "1";
    std::string name = "run";
    int time_order = 15; // N
    int order = 10;      // K
    std::array<int, 3> elements{2, 2, 2};
    int partitions = 14; // S
    std::array<double, 3> theta{0.5, 0.5, 0.5};
    std::optional<double> final_time;
    std::optional<std::array<double, 3>> diffusion;
    std::optional<std::array<double, 3>> velocity;
    std::optional<std::array<double, 6>> bounds;
    /// Kinematic viscosity of the Burgers problems.
    double viscosity = 1.0;
    BoundaryMode boundary_mode = BoundaryMode::ValuePlusTangential;
    LeastSquaresBackend solver = LeastSquaresBackend::SparseQR;

    int density = 10;
    int time_samples = 0; // 0 selects 4N+1
    std::vector<double> slices; // grid-dump times; empty selects {t_f}

    double picard_tolerance = 1e-12;
    int picard_max_iterations = 50;
    double picard_relaxation = 1.0;

    /// Sweep axis: "K", "M", "S" or "theta"; empty for a single run.
    std::string sweep_axis;
    std::vector<double> sweep_values;

    std::filesystem::path output_dir = "ieldtm_out";
    bool write_artifacts = true;

    [[nodiscard]] static RunConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;

    [[nodiscard]] int dimension() const;
    [[nodiscard]] double resolved_final_time() const;
    [[nodiscard]] ProblemSpec make_problem() const;
    [[nodiscard]] Mesh make_mesh(const ProblemSpec& problem) const;
    [[nodiscard]] SchemeParams make_scheme() const;

    /// Checks every precondition before any allocation; throws ConfigError.
    void validate() const;
};

struct RunOutcome {
    ErrorReport report;
    double residual_norm = 0.0;
    double optimality = 0.0;
    long rank = 0;
    int iterations = 1; // linear solves
    std::string picard_stop;
    double runtime_seconds = 0.0;
};

[[nodiscard]] std::string summary_header();
[[nodiscard]] std::string summary_row(const RunConfig& config, const RunOutcome& outcome);

/// Solves one configuration. Writes summary.csv, samples.csv, slice_<i>.csv and
/// timing.csv into `config.output_dir` when write_artifacts is set.
RunOutcome run_single(const RunConfig& config);

struct SweepPoint {
    double value = 0.0;
    std::optional<RunOutcome> outcome;
    std::string failure;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::optional<double> slope;       // from e_inf
    std::optional<double> slope_final; // from e_inf_final
};

/// Least-squares slope of log10(e) against x (K) or log10(dh) (M); points
/// with non-positive errors are skipped.
[[nodiscard]] std::optional<double> fitted_slope(const std::vector<double>& x,
                                                 const std::vector<double>& errors);

/// Runs every sweep value; failing points are recorded and skipped. Writes
/// sweep.csv into the output directory.
SweepResult run_sweep(const RunConfig& config);

struct TableRunOptions {
    std::vector<int> meshes; // empty selects every row of the reference table
    std::filesystem::path output_dir = "ieldtm_out";
    int density = 10;
};

/// Problem 1 preset (t_f = 0.25, N = 15, S = 14, K = 10) for the three
/// directions, written to table1.csv next to the transcribed literature values.
void run_table1(const TableRunOptions& options);
/// Problem 3 preset (t_f = 0.25, N = 15, S = 16, viscosity 1, K = 10).
void run_table2(const TableRunOptions& options);

/// Output directory after applying the environment override.
[[nodiscard]] std::filesystem::path resolve_output_dir(const std::filesystem::path& configured);

} // namespace ieldtm
