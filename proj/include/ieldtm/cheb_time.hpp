#pragma once

// Chebyshev-Gauss-Lobatto collocation in time on [0, t_f].
//
// The parabolic problem is sampled at the N+1 nodes t_n; the time derivative
// becomes a dense (N+1)x(N+1) operator acting on nodal values. Removing the
// n = 0 column (the initial condition) leaves the N x N operator that couples
// the spatial modes c_1 .. c_N.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace ieldtm {

inline constexpr int kMaxTimeOrder = 64;

/// Split of rows 1..N of the full differentiation matrix into the part acting
/// on the unknown modes and the column multiplying the initial value.
struct ReducedTimeOperator {
    Eigen::MatrixXd matrix;         // N x N
    Eigen::VectorXd initial_column; // length N
};

/// Collocation grid, differentiation matrix and its initial-condition reduction.
/// Immutable once built.
class TimeDiscretization {
public:
    TimeDiscretization(int order, double final_time);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] double final_time() const noexcept { return final_time_; }
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const Eigen::MatrixXd& full() const noexcept { return full_; }
    [[nodiscard]] const Eigen::MatrixXd& reduced() const noexcept { return reduced_.matrix; }
    [[nodiscard]] const Eigen::VectorXd& initial_column() const noexcept {
        return reduced_.initial_column;
    }

    /// Discrete Chebyshev coefficients of a nodal vector (length N+1).
    [[nodiscard]] std::vector<double> chebyshev_coefficients(std::span<const double> nodal) const;

    /// Evaluates the Chebyshev interpolant of nodal values at time t.
    [[nodiscard]] double interpolate(std::span<const double> nodal, double t) const;

    /// Row vector L(t) with interpolate(v, t) == L(t) . v for every nodal vector v.
    [[nodiscard]] Eigen::RowVectorXd interpolation_row(double t) const;

private:
    int order_;
    double final_time_;
    std::vector<double> nodes_;
    Eigen::MatrixXd full_;
    ReducedTimeOperator reduced_;
};

/// Nodes t_n = (t_f/2)(1 - cos(pi n / N)), n = 0..N, ascending with exact endpoints.
[[nodiscard]] std::vector<double> collocation_points(int order, double final_time);

/// Nodal differentiation matrix on the collocation grid (already scaled by 2/t_f).
[[nodiscard]] Eigen::MatrixXd differentiation_matrix(int order, double final_time);

[[nodiscard]] ReducedTimeOperator reduce_with_initial(const TimeDiscretization& disc);

/// Shifted Chebyshev polynomial T_j((2t - t_f)/t_f) evaluated at node n.
[[nodiscard]] double shifted_chebyshev_at_node(int j, int n, int order);

} // namespace ieldtm
