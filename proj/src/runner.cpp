#include "ieldtm/runner.hpp"

#include "ieldtm/assembly.hpp"
#include "ieldtm/error.hpp"
#include "ieldtm/picard.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

namespace ieldtm {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "problem", "name", "N", "K", "M", "Mx", "My", "Mz", "S", "theta", "theta_x", "theta_y",
        "theta_z", "t_f", "D", "Dx", "Dy", "Dz", "V", "Vx", "Vy", "Vz", "bounds", "viscosity",
        "boundary_mode", "solver", "density", "time_samples", "slices", "picard_tol",
        "picard_max_iters", "picard_relaxation", "sweep_axis", "sweep_values", "output_dir",
        "write_artifacts"};
    return keys;
}

std::string format(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::string short_format(double v) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(3) << v;
    return out.str();
}

bool is_2d_problem(const std::string& p) {
    return p == "1" || p == "2" || p == "3" || p == "manufactured" || p == "manufactured2d" ||
           p == "constant_burgers";
}

bool is_3d_problem(const std::string& p) {
    return p == "4" || p == "manufactured3d" || p == "trilinear3d";
}

std::string boundary_mode_name(BoundaryMode m) {
    return m == BoundaryMode::ValueOnly ? "value_only" : "value_plus_tangential";
}

std::string solver_name(LeastSquaresBackend b) {
    return b == LeastSquaresBackend::SparseQR ? "sparse_qr" : "dense_cod";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!known_keys().count(key)) throw ConfigError("unknown configuration key '" + key + "'");

    RunConfig c;
    try {
        if (j.contains("problem"))
            c.problem = j["problem"].is_number() ? std::to_string(j["problem"].get<int>())
                                                 : j["problem"].get<std::string>();
        c.name = j.value("name", c.name);
        c.time_order = j.value("N", c.time_order);
        c.order = j.value("K", c.order);
        if (j.contains("M")) c.elements.fill(j["M"].get<int>());
        c.elements[0] = j.value("Mx", c.elements[0]);
        c.elements[1] = j.value("My", c.elements[1]);
        c.elements[2] = j.value("Mz", c.elements[2]);
        c.partitions = j.value("S", c.partitions);
        if (j.contains("theta")) c.theta.fill(j["theta"].get<double>());
        c.theta[0] = j.value("theta_x", c.theta[0]);
        c.theta[1] = j.value("theta_y", c.theta[1]);
        c.theta[2] = j.value("theta_z", c.theta[2]);
        if (j.contains("t_f")) c.final_time = j["t_f"].get<double>();

        auto triple = [&](const char* all, const char* x, const char* y, const char* z,
                          double fallback) -> std::optional<std::array<double, 3>> {
            if (!j.contains(all) && !j.contains(x) && !j.contains(y) && !j.contains(z))
                return std::nullopt;
            std::array<double, 3> v{fallback, fallback, fallback};
            if (j.contains(all)) {
                if (j[all].is_array()) {
                    const auto arr = j[all].get<std::vector<double>>();
                    if (arr.empty() || arr.size() > 3)
                        throw ConfigError(std::string(all) + " must have 1 to 3 entries");
                    for (std::size_t d = 0; d < arr.size(); ++d) v[d] = arr[d];
                } else {
                    v.fill(j[all].get<double>());
                }
            }
            v[0] = j.value(x, v[0]);
            v[1] = j.value(y, v[1]);
            v[2] = j.value(z, v[2]);
            return v;
        };
        c.diffusion = triple("D", "Dx", "Dy", "Dz", 1.0);
        c.velocity = triple("V", "Vx", "Vy", "Vz", 0.0);

        if (j.contains("bounds")) {
            const auto b = j["bounds"].get<std::vector<double>>();
            if (b.size() != 4 && b.size() != 6) throw ConfigError("bounds must have 4 or 6 entries");
            std::array<double, 6> arr{0.0, 1.0, 0.0, 1.0, 0.0, 1.0};
            for (std::size_t d = 0; d < b.size(); ++d) arr[d] = b[d];
            c.bounds = arr;
        }
        c.viscosity = j.value("viscosity", c.viscosity);
        if (j.contains("boundary_mode")) {
            const auto m = j["boundary_mode"].get<std::string>();
            if (m == "value_only")
                c.boundary_mode = BoundaryMode::ValueOnly;
            else if (m == "value_plus_tangential")
                c.boundary_mode = BoundaryMode::ValuePlusTangential;
            else
                throw ConfigError("boundary_mode must be value_only or value_plus_tangential");
        }
        if (j.contains("solver")) {
            const auto s = j["solver"].get<std::string>();
            if (s == "sparse_qr")
                c.solver = LeastSquaresBackend::SparseQR;
            else if (s == "dense_cod")
                c.solver = LeastSquaresBackend::DenseCOD;
            else
                throw ConfigError("solver must be sparse_qr or dense_cod");
        }
        c.density = j.value("density", c.density);
        c.time_samples = j.value("time_samples", c.time_samples);
        if (j.contains("slices")) c.slices = j["slices"].get<std::vector<double>>();
        c.picard_tolerance = j.value("picard_tol", c.picard_tolerance);
        c.picard_max_iterations = j.value("picard_max_iters", c.picard_max_iterations);
        c.picard_relaxation = j.value("picard_relaxation", c.picard_relaxation);
        c.sweep_axis = j.value("sweep_axis", c.sweep_axis);
        if (j.contains("sweep_values")) c.sweep_values = j["sweep_values"].get<std::vector<double>>();
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
        c.write_artifacts = j.value("write_artifacts", c.write_artifacts);
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("malformed configuration: ") + ex.what());
    }
    return c;
}

json RunConfig::to_json() const {
    json j;
    j["problem"] = problem;
    j["name"] = name;
    j["N"] = time_order;
    j["K"] = order;
    j["Mx"] = elements[0];
    j["My"] = elements[1];
    j["Mz"] = elements[2];
    j["S"] = partitions;
    j["theta_x"] = theta[0];
    j["theta_y"] = theta[1];
    j["theta_z"] = theta[2];
    j["t_f"] = resolved_final_time();
    if (diffusion) j["D"] = *diffusion;
    if (velocity) j["V"] = *velocity;
    if (bounds) j["bounds"] = *bounds;
    j["viscosity"] = viscosity;
    j["boundary_mode"] = boundary_mode_name(boundary_mode);
    j["solver"] = solver_name(solver);
    j["density"] = density;
    j["time_samples"] = time_samples;
    j["slices"] = slices;
    j["picard_tol"] = picard_tolerance;
    j["picard_max_iters"] = picard_max_iterations;
    j["picard_relaxation"] = picard_relaxation;
    if (!sweep_axis.empty()) {
        j["sweep_axis"] = sweep_axis;
        j["sweep_values"] = sweep_values;
    }
    j["output_dir"] = output_dir.string();
    j["write_artifacts"] = write_artifacts;
    return j;
}

int RunConfig::dimension() const {
    if (is_2d_problem(problem)) return 2;
    if (is_3d_problem(problem)) return 3;
    throw ConfigError("unknown problem '" + problem + "'");
}

double RunConfig::resolved_final_time() const {
    if (final_time) return *final_time;
    return problem == "2" || problem == "4" ? 0.1 : 0.25;
}

ProblemSpec RunConfig::make_problem() const {
    const double tf = resolved_final_time();
    auto reject = [&](bool present, const char* what) {
        if (present)
            throw ConfigError("problem " + problem + " does not take a " + what + " override");
    };
    ProblemSpec spec;
    if (problem == "1") {
        reject(diffusion.has_value(), "diffusion");
        reject(velocity.has_value(), "velocity");
        reject(bounds.has_value(), "bounds");
        spec = problem1(tf);
    } else if (problem == "2") {
        reject(velocity.has_value(), "velocity");
        const auto d = diffusion.value_or(std::array<double, 3>{1.0, 1.0, 1.0});
        double xf = 1.0;
        double yf = 1.0;
        if (bounds) {
            if ((*bounds)[0] != 0.0 || (*bounds)[2] != 0.0)
                throw ConfigError("problem 2 domains start at the origin");
            xf = (*bounds)[1];
            yf = (*bounds)[3];
        }
        spec = problem2(d[0], d[1], xf, yf, tf);
    } else if (problem == "3") {
        reject(diffusion.has_value(), "diffusion (use viscosity)");
        reject(velocity.has_value(), "velocity");
        const auto b = bounds.value_or(std::array<double, 6>{0.0, 1.0, 0.0, 1.0, 0.0, 1.0});
        // the front 1/(1+exp((x+y-t)/s)) has viscosity s/2
        spec = problem3(2.0 * viscosity, tf, {b[0], b[1], b[2], b[3]});
    } else if (problem == "4") {
        reject(diffusion.has_value(), "diffusion");
        reject(velocity.has_value(), "velocity");
        reject(bounds.has_value(), "bounds");
        spec = problem4(tf);
    } else if (problem == "manufactured" || problem == "manufactured2d") {
        const auto v = velocity.value_or(std::array<double, 3>{0.0, 0.0, 0.0});
        const auto d = diffusion.value_or(std::array<double, 3>{1.0, 1.0, 1.0});
        spec = manufactured2d({v[0], v[1]}, {d[0], d[1]}, tf);
        if (bounds) spec.bounds = *bounds;
    } else if (problem == "manufactured3d") {
        spec = manufactured3d(velocity.value_or(std::array<double, 3>{0.0, 0.0, 0.0}),
                              diffusion.value_or(std::array<double, 3>{1.0, 1.0, 1.0}), tf);
        if (bounds) spec.bounds = *bounds;
    } else if (problem == "trilinear3d") {
        reject(diffusion.has_value(), "diffusion");
        reject(velocity.has_value(), "velocity");
        spec = trilinear3d(tf);
        if (bounds) spec.bounds = *bounds;
    } else if (problem == "constant_burgers") {
        reject(diffusion.has_value(), "diffusion (use viscosity)");
        reject(velocity.has_value(), "velocity");
        spec = constant_burgers(0.5, viscosity, tf);
        if (bounds) spec.bounds = *bounds;
    } else {
        throw ConfigError("unknown problem '" + problem + "'");
    }
    return spec;
}

Mesh RunConfig::make_mesh(const ProblemSpec& problem_spec) const {
    return Mesh(problem_spec.dimension, problem_spec.bounds, elements);
}

SchemeParams RunConfig::make_scheme() const {
    SchemeParams s;
    s.theta = theta;
    s.partitions = partitions;
    s.order = order;
    s.boundary_mode = boundary_mode;
    return s;
}

void RunConfig::validate() const {
    const int dim = dimension();
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(time_order >= 1 && time_order <= kMaxTimeOrder,
            "N must lie in [1, " + std::to_string(kMaxTimeOrder) + "]");
    require(order >= 1, "K must be >= 1");
    for (int d = 0; d < dim; ++d) {
        require(elements[d] >= 1, "element counts must be >= 1");
        require(theta[d] >= 0.0 && theta[d] <= 1.0, "theta must lie in [0, 1]");
    }
    require(partitions >= 1, "S must be >= 1");
    require(resolved_final_time() > 0.0, "t_f must be positive");
    require(density >= 1, "density must be >= 1");
    require(time_samples >= 0, "time_samples must be >= 0");
    require(viscosity > 0.0, "viscosity must be positive");
    require(picard_max_iterations >= 1, "picard_max_iters must be >= 1");
    require(!(picard_tolerance < 0.0), "picard_tol must be non-negative");
    require(picard_relaxation > 0.0 && picard_relaxation <= 1.0,
            "picard_relaxation must lie in (0, 1]");
    for (double s : slices)
        require(s >= 0.0 && s <= resolved_final_time(), "slice times must lie in [0, t_f]");
    if (!sweep_axis.empty()) {
        require(sweep_axis == "K" || sweep_axis == "M" || sweep_axis == "S" || sweep_axis == "theta",
                "sweep_axis must be one of K, M, S, theta");
        require(!sweep_values.empty(), "sweep_values must not be empty");
    }

    ProblemSpec spec;
    try {
        spec = make_problem();
        const Mesh mesh = make_mesh(spec);
        const SystemShape shape = system_shape(mesh, make_scheme(), time_order);
        require(shape.rows >= shape.cols,
                "S = " + std::to_string(partitions) + " gives " + std::to_string(shape.rows) +
                    " equations for " + std::to_string(shape.cols) + " unknowns");
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidParameter& ex) {
        throw ConfigError(ex.what());
    }
    require(spec.diffusion[dim - 1] != 0.0,
            "the diffusion coefficient along the last axis must be non-zero");
}

std::string summary_header() {
    return "name,problem,dimension,N,K,Mx,My,Mz,S,theta_x,theta_y,theta_z,boundary_mode,t_f,"
           "dof_label,spatial_dof,unknowns,rows,cols,phi,e_inf,e_inf_final,residual_norm,"
           "optimality,rank,iterations,picard_stop";
}

std::string summary_row(const RunConfig& c, const RunOutcome& o) {
    const int dim = c.dimension();
    std::ostringstream out;
    out << c.name << ',' << c.problem << ',' << dim << ',' << c.time_order << ',' << c.order << ','
        << c.elements[0] << ',' << c.elements[1] << ',' << (dim == 3 ? c.elements[2] : 1) << ','
        << c.partitions << ',' << format(c.theta[0]) << ',' << format(c.theta[1]) << ','
        << (dim == 3 ? format(c.theta[2]) : "") << ',' << boundary_mode_name(c.boundary_mode)
        << ',' << format(c.resolved_final_time()) << ',' << o.report.dof_label << ','
        << o.report.spatial_dof << ',' << o.report.unknowns << ',' << o.report.rows << ','
        << o.report.cols << ',' << format(o.report.ratio) << ',' << format(o.report.e_inf) << ','
        << format(o.report.e_inf_final) << ',' << format(o.residual_norm) << ','
        << format(o.optimality) << ',' << o.rank << ',' << o.iterations << ',' << o.picard_stop;
    return out.str();
}

std::filesystem::path resolve_output_dir(const std::filesystem::path& configured) {
    const char* env = std::getenv(kOutputDirEnv);
    if (env != nullptr && *env != '\0') return env;
    return configured;
}

namespace {

void write_artifacts(const RunConfig& config, const Solution& solution, const RunOutcome& outcome) {
    const std::filesystem::path dir = resolve_output_dir(config.output_dir);
    std::filesystem::create_directories(dir);
    const int dim = solution.mesh().dimension();
    const std::string coords = dim == 2 ? "x,y" : "x,y,z";
    auto coords_of = [&](const Point& p) {
        std::string s = format(p[0]) + ',' + format(p[1]);
        if (dim == 3) s += ',' + format(p[2]);
        return s;
    };

    write_text(dir / "config.json", config.to_json().dump(2) + "\n");
    write_text(dir / "summary.csv", std::string(kSummaryVersion) + "\n" + summary_header() + "\n" +
                                        summary_row(config, outcome) + "\n");
    write_text(dir / "timing.csv",
               "name,runtime_seconds\n" + config.name + ',' + format(outcome.runtime_seconds) + "\n");

    {
        std::ofstream out(dir / "samples.csv");
        if (!out) throw Error("cannot write samples.csv");
        out << coords << ",t,value,exact,abs_error\n";
        for (const auto& s : outcome.report.samples)
            out << coords_of(s.point) << ',' << format(s.time) << ',' << format(s.value) << ','
                << format(s.exact) << ',' << format(s.abs_error()) << '\n';
    }

    std::vector<double> slices = config.slices;
    if (slices.empty()) slices.push_back(solution.time().final_time());
    const Mesh& mesh = solution.mesh();
    const int per_axis = config.density + 1;
    const int z_points = dim == 3 ? per_axis : 1;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const double t = slices[i];
        const Eigen::RowVectorXd row = solution.time().interpolation_row(t);
        std::ofstream out(dir / ("slice_" + std::to_string(i) + ".csv"));
        if (!out) throw Error("cannot write slice dump");
        out << coords << ",t,value,abs_error\n";
        for (int e = 0; e < mesh.element_count(); ++e) {
            const Point c = mesh.centre(e);
            for (int a = 0; a < per_axis; ++a)
                for (int b = 0; b < per_axis; ++b)
                    for (int r = 0; r < z_points; ++r) {
                        Point p{c[0] + (static_cast<double>(a) / config.density - 0.5) * mesh.width(0),
                                c[1] + (static_cast<double>(b) / config.density - 0.5) * mesh.width(1),
                                0.0};
                        if (dim == 3)
                            p[2] = c[2] + (static_cast<double>(r) / config.density - 0.5) * mesh.width(2);
                        const double v = row.dot(solution.nodal_values(e, p));
                        out << coords_of(p) << ',' << format(t) << ',' << format(v) << ','
                            << format(std::abs(v - solution.problem().exact(p, t))) << '\n';
                    }
        }
    }
}

} // namespace

RunOutcome run_single(const RunConfig& config) {
    config.validate();
    const ProblemSpec problem = config.make_problem();
    const Mesh mesh = config.make_mesh(problem);
    const SchemeParams scheme = config.make_scheme();
    const TimeDiscretization time(config.time_order, problem.final_time);
    LeastSquaresOptions solver;
    solver.backend = config.solver;

    const auto start = std::chrono::steady_clock::now();
    RunOutcome outcome;
    std::optional<Solution> solution;
    GlobalSystem system;
    LeastSquaresResult solve;
    if (problem.dimension == 2 && problem.nonlinear()) {
        PicardOptions options;
        options.tolerance = config.picard_tolerance;
        options.max_iterations = config.picard_max_iterations;
        options.relaxation = config.picard_relaxation;
        options.solver = solver;
        PicardResult result = picard_burgers_2d(mesh, scheme, time, problem, options);
        outcome.iterations = result.iterations;
        outcome.picard_stop = result.stop == PicardStop::Tolerance ? "tolerance" : "stagnation";
        solve = std::move(result.solve);
        system = std::move(result.assembly.system);
        solution.emplace(mesh, time, problem, std::move(result.tables));
    } else if (problem.dimension == 2) {
        Assembly2D assembly = build_system_2d(mesh, scheme, time, problem);
        solve = solve_least_squares(assembly.system, solver);
        solution.emplace(mesh, time, problem, element_tables(assembly, solve.solution));
        system = std::move(assembly.system);
    } else {
        Assembly3D assembly = build_system_3d(mesh, scheme, time, problem);
        solve = solve_least_squares(assembly.system, solver);
        solution.emplace(mesh, time, problem, element_tables(assembly, solve.solution));
        system = std::move(assembly.system);
    }
    outcome.residual_norm = solve.residual_norm;
    outcome.optimality = solve.optimality;
    outcome.rank = static_cast<long>(solve.rank);
    outcome.report = error_report(*solution, system, config.density, config.time_samples);
    outcome.runtime_seconds = elapsed_since(start);
    if (config.write_artifacts) write_artifacts(config, *solution, outcome);
    return outcome;
}

std::optional<double> fitted_slope(const std::vector<double>& x, const std::vector<double>& errors) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.size() && i < errors.size(); ++i)
        if (errors[i] > 0.0 && std::isfinite(errors[i])) {
            xs.push_back(x[i]);
            ys.push_back(std::log10(errors[i]));
        }
    if (xs.size() < 2) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

SweepResult run_sweep(const RunConfig& config) {
    config.validate();
    if (config.sweep_axis.empty()) throw ConfigError("sweep needs sweep_axis and sweep_values");

    auto point_config = [&](double v) {
        RunConfig c = config;
        c.sweep_axis.clear();
        c.sweep_values.clear();
        c.write_artifacts = false;
        if (config.sweep_axis == "K") c.order = static_cast<int>(std::lround(v));
        if (config.sweep_axis == "M") c.elements.fill(static_cast<int>(std::lround(v)));
        if (config.sweep_axis == "S") c.partitions = static_cast<int>(std::lround(v));
        if (config.sweep_axis == "theta") c.theta.fill(v);
        c.name = config.name + "_" + config.sweep_axis + "_" + format(v);
        return c;
    };

    SweepResult result;
    std::vector<double> xs, errors, errors_final;
    std::ostringstream csv;
    csv << kSummaryVersion << "\n"
        << "sweep_value," << summary_header() << ",status\n";
    for (double v : config.sweep_values) {
        SweepPoint point;
        point.value = v;
        const RunConfig c = point_config(v);
        try {
            point.outcome = run_single(c);
            csv << format(v) << ',' << summary_row(c, *point.outcome) << ",ok\n";
            double x = v;
            if (config.sweep_axis == "M") {
                const ProblemSpec spec = c.make_problem();
                x = std::log10((spec.bounds[1] - spec.bounds[0]) / c.elements[0]);
            }
            xs.push_back(x);
            errors.push_back(point.outcome->report.e_inf);
            errors_final.push_back(point.outcome->report.e_inf_final);
        } catch (const Error& ex) {
            point.failure = ex.what();
            std::string msg = point.failure;
            for (char& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            csv << format(v) << ',' << c.name << std::string(26, ',') << ",failed: " << msg << "\n";
            std::cerr << "sweep point " << format(v) << " failed: " << point.failure << "\n";
        }
        result.points.push_back(std::move(point));
    }
    if (config.sweep_axis == "K" || config.sweep_axis == "M") {
        result.slope = fitted_slope(xs, errors);
        result.slope_final = fitted_slope(xs, errors_final);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        csv << "# slope," << format(result.slope.value_or(nan)) << "\n";
        csv << "# slope_final," << format(result.slope_final.value_or(nan)) << "\n";
    }
    const std::filesystem::path dir = resolve_output_dir(config.output_dir);
    std::filesystem::create_directories(dir);
    write_text(dir / "sweep.csv", csv.str());
    return result;
}

namespace {

struct TablePreset {
    std::string file;
    std::string problem;
    int partitions;
    const ReferenceTable* reference;
};

void run_table(const TablePreset& preset, const TableRunOptions& options) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream csv;
    csv << kSummaryVersion << "\n"
        << "# " << preset.reference->title << "\n"
        << "# " << preset.reference->literature_a_label << ", " << preset.reference->literature_b_label
        << " and published_* columns are transcribed published values; central/backward/forward "
           "are computed errors at t = t_f\n"
        << "mesh,dof_label,literature_mesh," << preset.reference->literature_a_label << ','
        << preset.reference->literature_b_label
        << ",central,backward,forward,central_space_time,central_iterations,published_central,"
           "published_backward,published_forward\n";

    std::cout << std::left << std::setw(12) << "mesh" << std::setw(14) << "literature"
              << std::setw(12) << preset.reference->literature_a_label << std::setw(12)
              << preset.reference->literature_b_label << std::setw(12) << "central" << std::setw(12)
              << "backward" << std::setw(12) << "forward" << "\n";

    for (const auto& row : preset.reference->rows) {
        if (!options.meshes.empty() &&
            std::find(options.meshes.begin(), options.meshes.end(), row.elements) ==
                options.meshes.end())
            continue;
        std::array<double, 3> finals{nan, nan, nan};
        double space_time = nan;
        int iterations = 0;
        std::string label;
        const std::array<double, 3> thetas{0.5, 1.0, 0.0};
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            RunConfig c;
            c.problem = preset.problem;
            c.name = preset.file + "_" + std::to_string(row.elements);
            c.time_order = 15;
            c.order = 10;
            c.partitions = preset.partitions;
            c.elements = {row.elements, row.elements, 1};
            c.theta.fill(thetas[i]);
            c.final_time = 0.25;
            c.viscosity = 1.0;
            c.density = options.density;
            c.write_artifacts = false;
            try {
                const RunOutcome o = run_single(c);
                finals[i] = o.report.e_inf_final;
                label = o.report.dof_label;
                if (i == 0) {
                    space_time = o.report.e_inf;
                    iterations = o.iterations;
                }
            } catch (const Error& ex) {
                std::cerr << preset.file << " mesh " << row.elements << " theta " << thetas[i]
                          << " failed: " << ex.what() << "\n";
            }
        }
        csv << row.elements << 'x' << row.elements << ',' << label << ',' << row.literature_mesh
            << ',' << format(row.literature_a) << ',' << format(row.literature_b) << ','
            << format(finals[0]) << ',' << format(finals[1]) << ',' << format(finals[2]) << ','
            << format(space_time) << ',' << iterations << ',' << format(row.central) << ','
            << format(row.backward) << ',' << format(row.forward) << "\n";
        std::cout << std::left << std::setw(12) << label << std::setw(14) << row.literature_mesh
                  << std::setw(12) << short_format(row.literature_a) << std::setw(12)
                  << short_format(row.literature_b) << std::setw(12) << short_format(finals[0])
                  << std::setw(12) << short_format(finals[1]) << std::setw(12)
                  << short_format(finals[2]) << "\n";
    }
    const std::filesystem::path dir = resolve_output_dir(options.output_dir);
    std::filesystem::create_directories(dir);
    write_text(dir / (preset.file + ".csv"), csv.str());
}

} // namespace

void run_table1(const TableRunOptions& options) {
    run_table({"table1", "1", 14, &reference_table1()}, options);
}

void run_table2(const TableRunOptions& options) {
    run_table({"table2", "3", 16, &reference_table2()}, options);
}

} // namespace ieldtm
