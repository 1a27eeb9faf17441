#include "ieldtm/assembly.hpp"

#include "ieldtm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ieldtm {

namespace {

Derivative derivative_along(int axis) {
    switch (axis) {
    case 0: return Derivative::DX;
    case 1: return Derivative::DY;
    default: return Derivative::DZ;
    }
}

Face face_of(int axis, bool upper) {
    return static_cast<Face>(2 * axis + (upper ? 1 : 0));
}

/// Transverse sweep of an element face: every point with coordinate `fixed`
/// along `axis` and the remaining axes on the uniform S-partition of the element.
std::vector<Point> face_points(const Mesh& mesh, int element, int axis, double fixed,
                               int partitions) {
    const auto ijk = mesh.element_ijk(element);
    std::array<int, 2> transverse{};
    int n_transverse = 0;
    for (int d = 0; d < mesh.dimension(); ++d)
        if (d != axis) transverse[n_transverse++] = d;

    auto coordinate = [&](int d, int s) {
        return mesh.lower(d) + ijk[d] * mesh.width(d) + s * mesh.width(d) / partitions;
    };

    std::vector<Point> pts;
    if (n_transverse == 1) {
        pts.reserve(static_cast<std::size_t>(partitions) + 1);
        for (int s = 0; s <= partitions; ++s) {
            Point p{0.0, 0.0, 0.0};
            p[axis] = fixed;
            p[transverse[0]] = coordinate(transverse[0], s);
            pts.push_back(p);
        }
    } else {
        pts.reserve(static_cast<std::size_t>(partitions + 1) * (partitions + 1));
        for (int s0 = 0; s0 <= partitions; ++s0)
            for (int s1 = 0; s1 <= partitions; ++s1) {
                Point p{0.0, 0.0, 0.0};
                p[axis] = fixed;
                p[transverse[0]] = coordinate(transverse[0], s0);
                p[transverse[1]] = coordinate(transverse[1], s1);
                pts.push_back(p);
            }
    }
    return pts;
}

std::vector<double> weights_at(const Mesh& mesh, int order, int element, const Point& p,
                               Derivative deriv) {
    const Point c = mesh.centre(element);
    if (mesh.dimension() == 2)
        return evaluation_weights_2d(order, p[0] - c[0], p[1] - c[1], deriv);
    return evaluation_weights_3d(order, p[0] - c[0], p[1] - c[1], p[2] - c[2], deriv);
}

Eigen::MatrixXd block_of(const TransformTable2D& t, const std::vector<double>& w) {
    return evaluate_block_2d(t, w);
}
Eigen::MatrixXd block_of(const TransformTable3D& t, const std::vector<double>& w) {
    return evaluate_block_3d(t, w);
}

struct RowCounts {
    long interface_points = 0;
    long boundary_points = 0;
    int boundary_rows_per_point = 1;
};

RowCounts count_rows(const Mesh& mesh, const SchemeParams& scheme) {
    const int dim = mesh.dimension();
    const long per_face =
        dim == 2 ? scheme.partitions + 1L : static_cast<long>(scheme.partitions + 1) * (scheme.partitions + 1);
    RowCounts rc;
    for (int axis = 0; axis < dim; ++axis) {
        long faces_across = 1;
        for (int d = 0; d < dim; ++d)
            if (d != axis) faces_across *= mesh.count(d);
        rc.interface_points += faces_across * (mesh.count(axis) - 1) * per_face;
        rc.boundary_points += 2 * faces_across * per_face;
    }
    rc.boundary_rows_per_point = scheme.boundary_mode == BoundaryMode::ValueOnly ? 1 : dim;
    return rc;
}

/// Appends rows to a row-major sparse matrix in order. Rows of one batch share
/// the point and differ by time mode.
class RowWriter {
public:
    RowWriter(Eigen::Index rows, Eigen::Index cols, Eigen::Index nnz_hint)
        : matrix_(rows, cols), rhs_(Eigen::VectorXd::Zero(rows)) {
        matrix_.reserve(nnz_hint);
    }

    /// parts: (first column, N x W block) in ascending column order.
    void add_batch(const std::vector<std::pair<Eigen::Index, Eigen::MatrixXd>>& parts,
                   const Eigen::VectorXd& rhs) {
        for (Eigen::Index n = 0; n < rhs.size(); ++n) {
            matrix_.startVec(next_);
            for (const auto& [first, block] : parts)
                for (Eigen::Index c = 0; c < block.cols(); ++c) {
                    const double v = block(n, c);
                    if (v != 0.0) matrix_.insertBack(next_, first + c) = v;
                }
            rhs_(next_) = rhs(n);
            ++next_;
        }
    }

    [[nodiscard]] Eigen::Index written() const noexcept { return next_; }

    void finish(GlobalSystem& sys) {
        matrix_.finalize();
        sys.matrix = Eigen::SparseMatrix<double>(matrix_);
        sys.rhs = std::move(rhs_);
    }

private:
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
    Eigen::VectorXd rhs_;
    Eigen::Index next_ = 0;
};

template <class Operators>
GlobalSystem assemble(const Mesh& mesh, const SchemeParams& scheme, const TimeDiscretization& time,
                      const ProblemSpec& problem, const Operators& ops, int per_mode) {
    const int dim = mesh.dimension();
    const int modes = time.order();
    const int order = scheme.order;
    const int elements = mesh.element_count();
    const Eigen::Index per_element = static_cast<Eigen::Index>(modes) * per_mode;
    const Eigen::Index cols = per_element * elements;

    const SystemShape shape = system_shape(mesh, scheme, modes);
    const long interface_rows = shape.interface_rows;
    const long boundary_rows = shape.boundary_rows;
    const long rows = shape.rows;

    GlobalSystem sys;
    sys.modes = modes;
    sys.per_mode = per_mode;
    sys.elements = elements;
    sys.provenance.reserve(static_cast<std::size_t>(rows));

    const Eigen::Index nnz_hint = 2 * interface_rows * per_element + boundary_rows * per_element;
    RowWriter writer(rows, cols, nnz_hint);

    const std::vector<double>& nodes = time.nodes();
    std::vector<std::pair<Eigen::Index, Eigen::MatrixXd>> parts;

    auto record = [&](RowKind kind, int e, int neighbor, int axis, Face face, const Point& p) {
        for (int n = 0; n < modes; ++n)
            sys.provenance.push_back({kind, e, neighbor, axis, face, p, n});
    };

    for (int e = 0; e < elements; ++e) {
        const auto ijk = mesh.element_ijk(e);
        const auto& hom = *ops.homogeneous[e];
        const auto& part = ops.particular[e];

        for (int axis = 0; axis < dim; ++axis) {
            if (ijk[axis] + 1 >= mesh.count(axis)) continue;
            auto nijk = ijk;
            ++nijk[axis];
            const int nb = mesh.element_index(nijk);
            const auto& nhom = *ops.homogeneous[nb];
            const auto& npart = ops.particular[nb];
            for (const Point& p : continuity_points(mesh, e, axis, scheme.theta[axis],
                                                    scheme.partitions)) {
                for (int which = 0; which < 2; ++which) {
                    const Derivative d = which == 0 ? Derivative::Value : derivative_along(axis);
                    const double scale = which == 0 ? 1.0 : mesh.width(axis);
                    const auto wl = weights_at(mesh, order, e, p, d);
                    const auto wr = weights_at(mesh, order, nb, p, d);
                    parts.clear();
                    parts.emplace_back(e * per_element, scale * block_of(hom, wl));
                    parts.emplace_back(nb * per_element, -scale * block_of(nhom, wr));
                    const Eigen::VectorXd rhs =
                        -scale * (block_of(part, wl) - block_of(npart, wr)).col(0);
                    writer.add_batch(parts, rhs);
                    record(which == 0 ? RowKind::InterfaceValue : RowKind::InterfaceNormal, e, nb,
                           axis, Face::XMin, p);
                }
            }
        }

        for (int axis = 0; axis < dim; ++axis) {
            for (int side = 0; side < 2; ++side) {
                const bool upper = side == 1;
                if (upper ? ijk[axis] + 1 != mesh.count(axis) : ijk[axis] != 0) continue;
                const Face face = face_of(axis, upper);
                const double fixed = upper ? mesh.upper(axis) : mesh.lower(axis);
                for (const Point& p : face_points(mesh, e, axis, fixed, scheme.partitions)) {
                    std::vector<BoundaryDatum> data;
                    data.reserve(static_cast<std::size_t>(modes));
                    for (int n = 1; n <= modes; ++n) data.push_back(problem.boundary(face, p, nodes[n]));

                    // value row, then one row per tangential axis
                    int tangent_slot = 0;
                    for (int d_axis = -1; d_axis < dim; ++d_axis) {
                        if (d_axis == axis) continue;
                        if (d_axis >= 0 && scheme.boundary_mode == BoundaryMode::ValueOnly) break;
                        const Derivative d =
                            d_axis < 0 ? Derivative::Value : derivative_along(d_axis);
                        const double scale = d_axis < 0 ? 1.0 : mesh.width(d_axis);
                        const auto w = weights_at(mesh, order, e, p, d);
                        Eigen::VectorXd target(modes);
                        for (int n = 0; n < modes; ++n)
                            target(n) = d_axis < 0 ? data[n].value : data[n].tangential[tangent_slot];
                        parts.clear();
                        parts.emplace_back(e * per_element, scale * block_of(hom, w));
                        const Eigen::VectorXd rhs = scale * (target - block_of(part, w).col(0));
                        writer.add_batch(parts, rhs);
                        record(d_axis < 0 ? RowKind::BoundaryValue : RowKind::BoundaryTangential, e,
                               -1, d_axis < 0 ? axis : d_axis, face, p);
                        if (d_axis >= 0) ++tangent_slot;
                    }
                }
            }
        }
    }

    IELDTM_REQUIRE(writer.written() == rows, Error, "row accounting mismatch in assembly");
    writer.finish(sys);
    sys.interface_rows = static_cast<int>(interface_rows);
    sys.boundary_rows = static_cast<int>(boundary_rows);
    return sys;
}

void require_determined(const Mesh& mesh, const SchemeParams& scheme, int modes) {
    const SystemShape shape = system_shape(mesh, scheme, modes);
    if (shape.rows < shape.cols)
        throw UnderdeterminedSystem("collocation system has " + std::to_string(shape.rows) +
                                    " equations for " + std::to_string(shape.cols) +
                                    " unknowns; increase the edge partition count S");
}

void check_problem(const Mesh& mesh, const SchemeParams& scheme, const TimeDiscretization& time,
                   const ProblemSpec& problem) {
    IELDTM_REQUIRE(problem.dimension == mesh.dimension(), InvalidParameter,
                   "problem and mesh dimensions differ");
    scheme.validate(mesh.dimension());
    IELDTM_REQUIRE(std::abs(time.final_time() - problem.final_time) <=
                       1e-14 * std::max(1.0, problem.final_time),
                   InvalidParameter, "time discretisation and problem disagree on t_f");
}

} // namespace

SystemShape system_shape(const Mesh& mesh, const SchemeParams& scheme, int modes) {
    const RowCounts rc = count_rows(mesh, scheme);
    const int per_mode = mesh.dimension() == 2 ? UnknownLayout2D::per_mode(scheme.order)
                                               : UnknownLayout3D::per_mode(scheme.order);
    SystemShape shape;
    shape.interface_rows = 2 * rc.interface_points * modes;
    shape.boundary_rows = rc.boundary_points * rc.boundary_rows_per_point * modes;
    shape.rows = shape.interface_rows + shape.boundary_rows;
    shape.cols = static_cast<long>(modes) * per_mode * mesh.element_count();
    return shape;
}

std::vector<Point> continuity_points(const Mesh& mesh, int element, int axis, double theta,
                                     int partitions) {
    IELDTM_REQUIRE(axis >= 0 && axis < mesh.dimension(), InvalidParameter,
                   "axis outside the mesh dimension");
    IELDTM_REQUIRE(partitions >= 1, InvalidParameter, "edge partition count S must be >= 1");
    const auto ijk = mesh.element_ijk(element);
    if (ijk[axis] + 1 >= mesh.count(axis))
        throw NoNeighbor("element " + std::to_string(element) + " has no neighbour along axis " +
                         std::to_string(axis));
    const double fixed = mesh.centre(element)[axis] + (1.0 - theta) * mesh.width(axis);
    return face_points(mesh, element, axis, fixed, partitions);
}

TransformTable2D homogeneous_map_2d(int order, const Advection2D& advection, double diffusion_x,
                                    double diffusion_y, const Eigen::MatrixXd& reduced) {
    const int modes = static_cast<int>(reduced.rows());
    const int per_mode = UnknownLayout2D::per_mode(order);
    const int width = modes * per_mode;
    TransformTable2D table(order, modes, width);
    for (int s = 0; s < per_mode; ++s) {
        const auto [k, p] = UnknownLayout2D::coefficient(order, s);
        const Eigen::Index base = static_cast<Eigen::Index>(table.index(k, p)) * width;
        for (int n = 0; n < modes; ++n) table.data()(n, base + n * per_mode + s) = 1.0;
    }
    complete_rows_2d(table, nullptr, advection, diffusion_x, diffusion_y, reduced);
    return table;
}

TransformTable3D homogeneous_map_3d(int order, const Coefficients3D& coeffs,
                                    const Eigen::MatrixXd& reduced) {
    const int modes = static_cast<int>(reduced.rows());
    const int per_mode = UnknownLayout3D::per_mode(order);
    const int width = modes * per_mode;
    TransformTable3D table(order, modes, width);
    for (int s = 0; s < per_mode; ++s) {
        const auto [k, p, h] = UnknownLayout3D::coefficient(order, s);
        const Eigen::Index base = static_cast<Eigen::Index>(table.index(k, p, h)) * width;
        for (int n = 0; n < modes; ++n) table.data()(n, base + n * per_mode + s) = 1.0;
    }
    complete_layers_3d(table, nullptr, coeffs, reduced);
    return table;
}

Assembly2D build_system_2d(const Mesh& mesh, const SchemeParams& scheme,
                           const TimeDiscretization& time, const ProblemSpec& problem,
                           const std::vector<Advection2D>* frozen_velocity) {
    check_problem(mesh, scheme, time, problem);
    const int order = scheme.order;
    const int elements = mesh.element_count();
    const int modes = time.order();
    const int per_mode = UnknownLayout2D::per_mode(order);
    const double dx = problem.diffusion[0];
    const double dy = problem.diffusion[1];
    if (problem.nonlinear())
        IELDTM_REQUIRE(frozen_velocity != nullptr &&
                           static_cast<int>(frozen_velocity->size()) == elements,
                       InvalidParameter, "nonlinear problems need one frozen velocity per element");

    require_determined(mesh, scheme, modes);
    Assembly2D out;
    const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(modes, per_mode);
    const Advection2D constant =
        Advection2D::constant(problem.velocity[0], problem.velocity[1], modes);
    std::shared_ptr<const TransformTable2D> shared;
    out.operators.homogeneous.reserve(static_cast<std::size_t>(elements));
    out.operators.particular.reserve(static_cast<std::size_t>(elements));
    for (int e = 0; e < elements; ++e) {
        const Point c = mesh.centre(e);
        const auto ijk = mesh.element_ijk(e);
        const Element2D element{ijk[0], ijk[1], c[0], c[1], mesh.width(0), mesh.width(1)};
        const Advection2D& adv = problem.nonlinear() ? (*frozen_velocity)[e] : constant;
        if (problem.nonlinear() || !scheme.reuse_element_map || !shared) {
            auto map = std::make_shared<const TransformTable2D>(
                homogeneous_map_2d(order, adv, dx, dy, time.reduced()));
            if (!problem.nonlinear() && scheme.reuse_element_map) shared = map;
            out.operators.homogeneous.push_back(std::move(map));
        } else {
            out.operators.homogeneous.push_back(shared);
        }
        const TransformTable2D g = source_transforms_2d(problem, element, time.initial_column(), order);
        out.operators.particular.push_back(complete_table_2d(zeros, g, adv, dx, dy, time.reduced()));
    }
    out.system = assemble(mesh, scheme, time, problem, out.operators, per_mode);
    return out;
}

Assembly3D build_system_3d(const Mesh& mesh, const SchemeParams& scheme,
                           const TimeDiscretization& time, const ProblemSpec& problem) {
    check_problem(mesh, scheme, time, problem);
    IELDTM_REQUIRE(!problem.nonlinear(), InvalidParameter, "3D nonlinear problems are not supported");
    const int order = scheme.order;
    const int elements = mesh.element_count();
    const int modes = time.order();
    const int per_mode = UnknownLayout3D::per_mode(order);
    const Coefficients3D coeffs{problem.velocity[0],  problem.velocity[1],  problem.velocity[2],
                                problem.diffusion[0], problem.diffusion[1], problem.diffusion[2]};

    require_determined(mesh, scheme, modes);
    Assembly3D out;
    const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(modes, per_mode);
    std::shared_ptr<const TransformTable3D> shared;
    for (int e = 0; e < elements; ++e) {
        const Point c = mesh.centre(e);
        const auto ijk = mesh.element_ijk(e);
        const Element3D element{ijk[0],        ijk[1],        ijk[2],       c[0], c[1], c[2],
                                mesh.width(0), mesh.width(1), mesh.width(2)};
        if (!scheme.reuse_element_map || !shared) {
            auto map = std::make_shared<const TransformTable3D>(
                homogeneous_map_3d(order, coeffs, time.reduced()));
            if (scheme.reuse_element_map) shared = map;
            out.operators.homogeneous.push_back(std::move(map));
        } else {
            out.operators.homogeneous.push_back(shared);
        }
        const TransformTable3D g = source_transforms_3d(problem, element, time.initial_column(), order);
        out.operators.particular.push_back(complete_table_3d(zeros, g, coeffs, time.reduced()));
    }
    out.system = assemble(mesh, scheme, time, problem, out.operators, per_mode);
    return out;
}

std::vector<TransformTable2D> element_tables(const Assembly2D& assembly, const Eigen::VectorXd& zeta) {
    const auto& sys = assembly.system;
    IELDTM_REQUIRE(zeta.size() == sys.cols(), InvalidParameter, "unknown vector has the wrong length");
    std::vector<TransformTable2D> tables;
    tables.reserve(static_cast<std::size_t>(sys.elements));
    for (int e = 0; e < sys.elements; ++e) {
        const auto& hom = *assembly.operators.homogeneous[e];
        const auto& part = assembly.operators.particular[e];
        const auto z = zeta.segment(static_cast<Eigen::Index>(e) * sys.per_element(), sys.per_element());
        TransformTable2D t(hom.order(), hom.modes(), 1);
        for (int idx = 0; idx < t.size(); ++idx)
            t.data().col(idx) = hom.block_at(idx) * z + part.block_at(idx);
        tables.push_back(std::move(t));
    }
    return tables;
}

std::vector<TransformTable3D> element_tables(const Assembly3D& assembly, const Eigen::VectorXd& zeta) {
    const auto& sys = assembly.system;
    IELDTM_REQUIRE(zeta.size() == sys.cols(), InvalidParameter, "unknown vector has the wrong length");
    std::vector<TransformTable3D> tables;
    tables.reserve(static_cast<std::size_t>(sys.elements));
    for (int e = 0; e < sys.elements; ++e) {
        const auto& hom = *assembly.operators.homogeneous[e];
        const auto& part = assembly.operators.particular[e];
        const auto z = zeta.segment(static_cast<Eigen::Index>(e) * sys.per_element(), sys.per_element());
        TransformTable3D t(hom.order(), hom.modes(), 1);
        for (int idx = 0; idx < t.size(); ++idx)
            t.data().col(idx) = hom.block_at(idx) * z + part.block_at(idx);
        tables.push_back(std::move(t));
    }
    return tables;
}

Solution::Solution(Mesh mesh, const TimeDiscretization& time, ProblemSpec problem,
                   std::vector<TransformTable2D> tables)
    : mesh_(std::move(mesh)), time_(time), problem_(std::move(problem)), t2_(std::move(tables)) {
    IELDTM_REQUIRE(static_cast<int>(t2_.size()) == mesh_.element_count(), InvalidParameter,
                   "one table per element expected");
}

Solution::Solution(Mesh mesh, const TimeDiscretization& time, ProblemSpec problem,
                   std::vector<TransformTable3D> tables)
    : mesh_(std::move(mesh)), time_(time), problem_(std::move(problem)), t3_(std::move(tables)) {
    IELDTM_REQUIRE(static_cast<int>(t3_.size()) == mesh_.element_count(), InvalidParameter,
                   "one table per element expected");
}

Eigen::VectorXd Solution::nodal_values(int element, const Point& p) const {
    const int modes = time_.order();
    Eigen::VectorXd v(modes + 1);
    v(0) = problem_.initial(p);
    const Point c = mesh_.centre(element);
    if (mesh_.dimension() == 2) {
        const auto w = evaluation_weights_2d(t2_[element].order(), p[0] - c[0], p[1] - c[1],
                                             Derivative::Value);
        v.tail(modes) = evaluate_block_2d(t2_[element], w).col(0);
    } else {
        const auto w = evaluation_weights_3d(t3_[element].order(), p[0] - c[0], p[1] - c[1],
                                             p[2] - c[2], Derivative::Value);
        v.tail(modes) = evaluate_block_3d(t3_[element], w).col(0);
    }
    return v;
}

Eigen::VectorXd Solution::nodal_values(const Point& p) const {
    return nodal_values(mesh_.locate(p), p);
}

double Solution::value(const Point& p, double t) const {
    return time_.interpolation_row(t).dot(nodal_values(p));
}

} // namespace ieldtm
