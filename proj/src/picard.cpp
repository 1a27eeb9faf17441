#include "ieldtm/picard.hpp"

#include "ieldtm/error.hpp"

#include <sstream>

namespace ieldtm {

namespace {

TransformTable2D initial_table(const ProblemSpec& problem, const Point& centre, int order, int modes) {
    TransformTable2D t(order, modes, 1);
    for (int p = 0; p <= order; ++p)
        for (int k = 0; k + p <= order; ++k)
            t.block(k, p).setConstant(problem.initial_coefficient(centre, {k, p, 0}));
    return t;
}

} // namespace

Eigen::VectorXd initial_unknowns_2d(const Mesh& mesh, int order, int modes, const ProblemSpec& problem) {
    const int per_mode = UnknownLayout2D::per_mode(order);
    const Eigen::Index per_element = static_cast<Eigen::Index>(modes) * per_mode;
    Eigen::VectorXd zeta(per_element * mesh.element_count());
    for (int e = 0; e < mesh.element_count(); ++e) {
        const Point c = mesh.centre(e);
        for (int s = 0; s < per_mode; ++s) {
            const auto [k, p] = UnknownLayout2D::coefficient(order, s);
            const double v = problem.initial_coefficient(c, {k, p, 0});
            for (int n = 0; n < modes; ++n) zeta(e * per_element + n * per_mode + s) = v;
        }
    }
    return zeta;
}

std::vector<Advection2D> initial_velocity_2d(const Mesh& mesh, int order, int modes,
                                             const ProblemSpec& problem) {
    std::vector<Advection2D> velocity;
    velocity.reserve(static_cast<std::size_t>(mesh.element_count()));
    for (int e = 0; e < mesh.element_count(); ++e) {
        TransformTable2D t = initial_table(problem, mesh.centre(e), order, modes);
        velocity.push_back({t, t});
    }
    return velocity;
}

PicardResult picard_burgers_2d(const Mesh& mesh, const SchemeParams& scheme,
                               const TimeDiscretization& time, const ProblemSpec& problem,
                               const PicardOptions& options) {
    IELDTM_REQUIRE(problem.nonlinear() && problem.dimension == 2, InvalidParameter,
                   "Picard iteration needs a 2D Burgers problem");
    IELDTM_REQUIRE(options.max_iterations >= 1, InvalidParameter, "max_iterations must be >= 1");
    IELDTM_REQUIRE(options.relaxation > 0.0 && options.relaxation <= 1.0, InvalidParameter,
                   "relaxation must lie in (0, 1]");
    IELDTM_REQUIRE(!(options.tolerance < 0.0), InvalidParameter, "tolerance must be non-negative");

    const int order = scheme.order;
    const int modes = time.order();
    Eigen::VectorXd zeta = initial_unknowns_2d(mesh, order, modes, problem);
    std::vector<Advection2D> velocity = initial_velocity_2d(mesh, order, modes, problem);

    PicardResult result;
    for (int it = 1; it <= options.max_iterations; ++it) {
        result.assembly = build_system_2d(mesh, scheme, time, problem, &velocity);
        result.solve = solve_least_squares(result.assembly.system, options.solver);
        result.tables = element_tables(result.assembly, result.solve.solution);
        result.iterations = it;
        result.last_change = (result.solve.solution - zeta).cwiseAbs().maxCoeff();
        result.history.push_back(result.last_change);
        zeta = result.solve.solution;
        if (result.last_change < options.tolerance) {
            result.stop = PicardStop::Tolerance;
            return result;
        }
        const double floor = options.stagnation_tolerance * zeta.cwiseAbs().maxCoeff();
        if (it >= 2 && result.last_change < floor &&
            result.last_change > options.stagnation_ratio * result.history[it - 2]) {
            result.stop = PicardStop::Stagnation;
            return result;
        }

        for (std::size_t e = 0; e < velocity.size(); ++e) {
            TransformTable2D& u = velocity[e].ux;
            u.data() += options.relaxation * (result.tables[e].data() - u.data());
            velocity[e].uy = u;
        }
    }
    std::ostringstream msg;
    msg << "Picard iteration did not converge in " << options.max_iterations
        << " iterations (last change " << result.last_change << ")";
    throw NonConvergence(msg.str(), result.last_change, result.iterations);
}

} // namespace ieldtm
