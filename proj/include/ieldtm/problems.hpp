#pragma once

// Benchmark problem catalog: exact solutions, analytic Taylor data of the
// initial condition, and Dirichlet boundary data.

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace ieldtm {

using Point = std::array<double, 3>;
using MultiIndex = std::array<int, 3>;

enum class Face { XMin, XMax, YMin, YMax, ZMin, ZMax };

enum class Equation {
    Linear,  // u_t + V.grad u = sum D_d u_dd
    Burgers, // u_t + u u_x + u u_y = D (u_xx + u_yy)
};

struct BoundaryDatum {
    double value = 0.0;
    /// Derivatives of the boundary data along the face's tangential axes
    /// (one entry in 2D, two in 3D, ordered x < y < z).
    std::vector<double> tangential;
};

struct ProblemSpec {
    std::string name;
    int dimension = 2;
    Equation equation = Equation::Linear;
    std::array<double, 3> velocity{0.0, 0.0, 0.0};
    std::array<double, 3> diffusion{1.0, 1.0, 1.0};
    /// a, b, c, d[, e, f]
    std::array<double, 6> bounds{0.0, 1.0, 0.0, 1.0, 0.0, 1.0};
    double final_time = 1.0;

    std::function<double(const Point&, double)> exact;
    std::function<Point(const Point&, double)> exact_gradient;
    /// Scaled Taylor coefficient (1/alpha!) d^alpha g at a point, g = exact(., 0).
    std::function<double(const Point&, const MultiIndex&)> initial_coefficient;

    [[nodiscard]] double initial(const Point& p) const { return exact(p, 0.0); }
    /// Mixed partial derivative d^alpha g.
    [[nodiscard]] double initial_partial(const Point& p, const MultiIndex& alpha) const;
    [[nodiscard]] BoundaryDatum boundary(Face face, const Point& p, double t) const;
    [[nodiscard]] bool nonlinear() const noexcept { return equation == Equation::Burgers; }
};

/// Pure diffusion, u = exp(-2 pi^2 t) sin(pi x) sin(pi y) on the unit square.
[[nodiscard]] ProblemSpec problem1(double final_time = 0.25);

/// Travelling Gaussian with V = (1, 1) on [0, x_f] x [0, y_f].
[[nodiscard]] ProblemSpec problem2(double diffusion_x = 1.0, double diffusion_y = 1.0,
                                   double x_final = 1.0, double y_final = 1.0,
                                   double final_time = 0.1);

/// Burgers front u = 1 / (1 + exp((x + y - t)/D)) on [a,b] x [c,d].
/// This profile solves the viscous Burgers equation with viscosity D/2,
/// which is the diffusion stored in the returned spec.
[[nodiscard]] ProblemSpec problem3(double scale_d = 1.0, double final_time = 0.25,
                                   std::array<double, 4> bounds = {0.0, 1.0, 0.0, 1.0});

/// 3D travelling Gaussian with V = D = (1, 1, 1) on the unit cube.
[[nodiscard]] ProblemSpec problem4(double final_time = 0.1);

/// Quadratic travelling polynomial, exact for any constant (V, D) in 2D.
[[nodiscard]] ProblemSpec manufactured2d(std::array<double, 2> velocity = {0.0, 0.0},
                                         std::array<double, 2> diffusion = {1.0, 1.0},
                                         double final_time = 0.25);

/// Travelling polynomial with a trilinear term, exact for any constant (V, D) in 3D.
[[nodiscard]] ProblemSpec manufactured3d(std::array<double, 3> velocity = {0.0, 0.0, 0.0},
                                         std::array<double, 3> diffusion = {1.0, 1.0, 1.0},
                                         double final_time = 0.25);

/// Steady trilinear field u = xyz with V = 0.
[[nodiscard]] ProblemSpec trilinear3d(double final_time = 0.25);

/// Burgers problem with a constant exact solution.
[[nodiscard]] ProblemSpec constant_burgers(double value = 0.5, double viscosity = 1.0,
                                           double final_time = 0.25);

// -- one-dimensional Taylor helpers (scaled coefficients f^(k)(x)/k!) --------

/// exp(-a (x - x0)^2) about x.
[[nodiscard]] std::vector<double> gaussian_taylor(double a, double x0, double x, int order);
/// sin(w x) about x.
[[nodiscard]] std::vector<double> sine_taylor(double w, double x, int order);
/// 1 / (1 + exp(z)) about z.
[[nodiscard]] std::vector<double> logistic_taylor(double z, int order);

// -- transcribed literature values ------------------------------------------

/// One row of a comparison table as printed in the literature, including the
/// IELDTM columns (central, backward, forward) used as regression references.
struct ReferenceRow {
    std::string literature_mesh; // e.g. "11x11 (121)"
    double literature_a;         // first literature column, NaN when absent
    double literature_b;
    int elements;                // M_x = M_y of the IELDTM row
    int spatial_dof;             // parenthetical dof of the IELDTM row
    double central;              // theta = 0.5
    double backward;             // theta = 1
    double forward;              // theta = 0
};

struct ReferenceTable {
    std::string title;
    std::string literature_a_label;
    std::string literature_b_label;
    std::vector<ReferenceRow> rows;
};

/// Problem 1 comparison against two FDM schemes (transcribed values).
[[nodiscard]] const ReferenceTable& reference_table1();
/// Problem 3 comparison against ChSCM and FEM (transcribed values).
[[nodiscard]] const ReferenceTable& reference_table2();

} // namespace ieldtm
