#pragma once

// Continuity and boundary collocation equations, the global overdetermined
// system M zeta = P, and the fields reconstructed from its solution.
//
// Unknowns are grouped per element (element-lexicographic order); inside an
// element the free Taylor coefficients of mode n occupy slots
// n * per_mode .. (n+1) * per_mode - 1.

#include "ieldtm/cheb_time.hpp"
#include "ieldtm/local_taylor2d.hpp"
#include "ieldtm/local_taylor3d.hpp"
#include "ieldtm/mesh.hpp"
#include "ieldtm/problems.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <memory>
#include <vector>

namespace ieldtm {

enum class RowKind {
    InterfaceValue,     // C0 match between two neighbours
    InterfaceNormal,    // C1 match of the normal derivative
    BoundaryValue,      // Dirichlet value
    BoundaryTangential, // in-face derivative of the Dirichlet data
};

struct RowRecord {
    RowKind kind = RowKind::InterfaceValue;
    int element = 0;
    int neighbor = -1;     // -1 for boundary rows
    int axis = 0;          // interface normal, or derivative axis of a tangential row
    Face face = Face::XMin; // meaningful for boundary rows only
    Point point{0.0, 0.0, 0.0};
    int mode = 0;          // time node n - 1
};

struct GlobalSystem {
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd rhs;
    std::vector<RowRecord> provenance;
    int modes = 0;
    int per_mode = 0; // free coefficients per mode and element
    int elements = 0;
    int interface_rows = 0;
    int boundary_rows = 0;

    [[nodiscard]] Eigen::Index rows() const noexcept { return matrix.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return matrix.cols(); }
    [[nodiscard]] int per_element() const noexcept { return modes * per_mode; }
    [[nodiscard]] double ratio() const noexcept {
        return cols() > 0 ? static_cast<double>(rows()) / static_cast<double>(cols()) : 0.0;
    }
};

struct SystemShape {
    long interface_rows = 0;
    long boundary_rows = 0;
    long rows = 0;
    long cols = 0;
};

/// Row and column counts of the system build_system_2d/3d would assemble.
[[nodiscard]] SystemShape system_shape(const Mesh& mesh, const SchemeParams& scheme, int modes);

/// The S+1 (2D) or (S+1)^2 (3D) points of the continuity set between element
/// `element` and its upper neighbour along `axis`, located at
/// x* = x_c + (1 - theta) dx and sweeping the element's transverse extent.
[[nodiscard]] std::vector<Point> continuity_points(const Mesh& mesh, int element, int axis,
                                                   double theta, int partitions);

/// Per-element maps from free coefficients to completed tables. The
/// homogeneous table has width N * per_mode and may be shared across elements.
struct ElementOperators2D {
    std::vector<std::shared_ptr<const TransformTable2D>> homogeneous;
    std::vector<TransformTable2D> particular;
};

struct ElementOperators3D {
    std::vector<std::shared_ptr<const TransformTable3D>> homogeneous;
    std::vector<TransformTable3D> particular;
};

struct Assembly2D {
    GlobalSystem system;
    ElementOperators2D operators;
};

struct Assembly3D {
    GlobalSystem system;
    ElementOperators3D operators;
};

/// `frozen_velocity` holds one velocity table pair per element and is
/// required for nonlinear problems (and ignored otherwise).
[[nodiscard]] Assembly2D build_system_2d(const Mesh& mesh, const SchemeParams& scheme,
                                         const TimeDiscretization& time,
                                         const ProblemSpec& problem,
                                         const std::vector<Advection2D>* frozen_velocity = nullptr);

[[nodiscard]] Assembly3D build_system_3d(const Mesh& mesh, const SchemeParams& scheme,
                                         const TimeDiscretization& time,
                                         const ProblemSpec& problem);

/// Space-time field reconstructed from completed element tables.
class Solution {
public:
    Solution(Mesh mesh, const TimeDiscretization& time, ProblemSpec problem,
             std::vector<TransformTable2D> tables);
    Solution(Mesh mesh, const TimeDiscretization& time, ProblemSpec problem,
             std::vector<TransformTable3D> tables);

    [[nodiscard]] const Mesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const TimeDiscretization& time() const noexcept { return time_; }
    [[nodiscard]] const ProblemSpec& problem() const noexcept { return problem_; }
    [[nodiscard]] const std::vector<TransformTable2D>& tables_2d() const noexcept { return t2_; }
    [[nodiscard]] const std::vector<TransformTable3D>& tables_3d() const noexcept { return t3_; }

    /// Values at all N+1 time nodes, node 0 being the initial condition.
    [[nodiscard]] Eigen::VectorXd nodal_values(int element, const Point& p) const;
    [[nodiscard]] Eigen::VectorXd nodal_values(const Point& p) const;
    [[nodiscard]] double value(const Point& p, double t) const;

private:
    Mesh mesh_;
    TimeDiscretization time_;
    ProblemSpec problem_;
    std::vector<TransformTable2D> t2_;
    std::vector<TransformTable3D> t3_;
};

/// Completed width-1 tables from the global unknown vector.
[[nodiscard]] std::vector<TransformTable2D> element_tables(const Assembly2D& assembly,
                                                           const Eigen::VectorXd& zeta);
[[nodiscard]] std::vector<TransformTable3D> element_tables(const Assembly3D& assembly,
                                                           const Eigen::VectorXd& zeta);

/// Homogeneous unknowns-to-table map: width N * per_mode, unit vectors seeded
/// into the free coefficients and completed without a source.
[[nodiscard]] TransformTable2D homogeneous_map_2d(int order, const Advection2D& advection,
                                                  double diffusion_x, double diffusion_y,
                                                  const Eigen::MatrixXd& reduced);
[[nodiscard]] TransformTable3D homogeneous_map_3d(int order, const Coefficients3D& coeffs,
                                                  const Eigen::MatrixXd& reduced);

} // namespace ieldtm
