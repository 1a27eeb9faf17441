#pragma once

// Picard linearisation of the 2D Burgers equation: the advection velocity is
// frozen at the previous iterate, each element's tables are completed with the
// convolution recurrence, and the linear collocation system is solved again.

#include "ieldtm/assembly.hpp"
#include "ieldtm/least_squares.hpp"

#include <vector>

namespace ieldtm {

struct PicardOptions {
    double tolerance = 1e-12; // on max |zeta^(m+1) - zeta^(m)|
    int max_iterations = 50;
    /// Rounding-floor stop: once the change stops shrinking (change > ratio * previous
    /// change) while already below stagnation_tolerance * max|zeta|, the iterate is
    /// accepted. Set stagnation_tolerance to 0 to disable.
    double stagnation_ratio = 0.5;
    double stagnation_tolerance = 1e-6;
    /// Under-relaxation of the frozen velocity tables; 1 is the plain fixed point.
    double relaxation = 1.0;
    LeastSquaresOptions solver{};
};

enum class PicardStop {
    Tolerance,  // change < tolerance
    Stagnation, // change stalled below stagnation_tolerance
};

struct PicardResult {
    Assembly2D assembly;        // system of the last linear solve
    LeastSquaresResult solve;   // its least-squares solution
    std::vector<TransformTable2D> tables;
    int iterations = 0;         // number of linear solves
    double last_change = 0.0;
    PicardStop stop = PicardStop::Tolerance;
    std::vector<double> history; // change after every iteration
};

/// Initial guess: the initial condition's Taylor coefficients in every mode.
[[nodiscard]] Eigen::VectorXd initial_unknowns_2d(const Mesh& mesh, int order, int modes,
                                                  const ProblemSpec& problem);

/// Velocity tables of the initial condition, identical for every mode.
[[nodiscard]] std::vector<Advection2D> initial_velocity_2d(const Mesh& mesh, int order, int modes,
                                                           const ProblemSpec& problem);

[[nodiscard]] PicardResult picard_burgers_2d(const Mesh& mesh, const SchemeParams& scheme,
                                             const TimeDiscretization& time,
                                             const ProblemSpec& problem,
                                             const PicardOptions& options = {});

} // namespace ieldtm
