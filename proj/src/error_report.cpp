#include "ieldtm/error_report.hpp"

#include "ieldtm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ieldtm {

long spatial_dof(const Mesh& mesh, int order) {
    const long elements = mesh.element_count();
    return mesh.dimension() == 2 ? elements * (2L * order + 1)
                                 : elements * static_cast<long>(order + 1) * (order + 1);
}

std::string dof_label(const Mesh& mesh, int order) {
    std::ostringstream out;
    for (int d = 0; d < mesh.dimension(); ++d) out << (d > 0 ? "x" : "") << mesh.count(d);
    out << " (" << spatial_dof(mesh, order) << ")";
    return out.str();
}

ErrorReport error_report(const Solution& solution, const GlobalSystem& system, int density,
                         int time_samples) {
    IELDTM_REQUIRE(density >= 1, InvalidParameter, "sampling density must be >= 1");
    IELDTM_REQUIRE(time_samples >= 0, InvalidParameter, "time sample count must be >= 0");
    const Mesh& mesh = solution.mesh();
    const TimeDiscretization& time = solution.time();
    const ProblemSpec& problem = solution.problem();
    const int dim = mesh.dimension();
    const int modes = time.order();
    const int order = solution.tables_2d().empty() ? solution.tables_3d().front().order()
                                                   : solution.tables_2d().front().order();
    if (time_samples == 0) time_samples = 4 * modes + 1;

    std::vector<double> times(time.nodes());
    Eigen::MatrixXd interp(time_samples, modes + 1);
    for (int m = 0; m < time_samples; ++m) {
        const double t = time_samples == 1 ? time.final_time()
                                           : time.final_time() * m / (time_samples - 1);
        times.push_back(t);
        interp.row(m) = time.interpolation_row(t);
    }

    ErrorReport report;
    report.density = density;
    report.time_samples = time_samples;
    report.spatial_dof = spatial_dof(mesh, order);
    report.unknowns = static_cast<long>(system.cols());
    report.rows = static_cast<long>(system.rows());
    report.cols = static_cast<long>(system.cols());
    report.ratio = system.ratio();
    report.dof_label = dof_label(mesh, order);

    const int per_axis = density + 1;
    const int z_points = dim == 3 ? per_axis : 1;
    report.samples.reserve(static_cast<std::size_t>(mesh.element_count()) * per_axis * per_axis *
                           z_points * times.size());

    for (int e = 0; e < mesh.element_count(); ++e) {
        const Point c = mesh.centre(e);
        for (int a = 0; a < per_axis; ++a)
            for (int b = 0; b < per_axis; ++b)
                for (int r = 0; r < z_points; ++r) {
                    Point p{c[0] + (static_cast<double>(a) / density - 0.5) * mesh.width(0),
                            c[1] + (static_cast<double>(b) / density - 0.5) * mesh.width(1), 0.0};
                    if (dim == 3) p[2] = c[2] + (static_cast<double>(r) / density - 0.5) * mesh.width(2);
                    const Eigen::VectorXd nodal = solution.nodal_values(e, p);
                    const Eigen::VectorXd dense = interp * nodal;
                    for (std::size_t m = 0; m < times.size(); ++m) {
                        const double v = m <= static_cast<std::size_t>(modes)
                                             ? nodal(static_cast<Eigen::Index>(m))
                                             : dense(static_cast<Eigen::Index>(m) - modes - 1);
                        ErrorSample s{p, times[m], v, problem.exact(p, times[m])};
                        report.e_inf = std::max(report.e_inf, s.abs_error());
                        if (m == static_cast<std::size_t>(modes))
                            report.e_inf_final = std::max(report.e_inf_final, s.abs_error());
                        report.samples.push_back(s);
                    }
                }
    }
    return report;
}

} // namespace ieldtm
