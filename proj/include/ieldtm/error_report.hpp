#pragma once

// Maximum-error measurement of a reconstructed field against the exact
// solution, plus the bookkeeping reported alongside it.

#include "ieldtm/assembly.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ieldtm {

struct ErrorSample {
    Point point{0.0, 0.0, 0.0};
    double time = 0.0;
    double value = 0.0;
    double exact = 0.0;

    [[nodiscard]] double abs_error() const noexcept { return std::abs(value - exact); }
};

struct ErrorReport {
    std::vector<ErrorSample> samples;
    double e_inf = 0.0;       // max over every sample in space and time
    double e_inf_final = 0.0; // max over the spatial samples at t = t_f
    int density = 10;         // sample intervals per element edge
    int time_samples = 0;     // uniform times evaluated through the Chebyshev series
    long spatial_dof = 0;
    long unknowns = 0;
    long rows = 0;
    long cols = 0;
    double ratio = 0.0; // rows / cols
    std::string dof_label;
};

/// Free coefficients per time mode: M_x M_y (2K+1) in 2D, M_x M_y M_z (K+1)^2 in 3D.
[[nodiscard]] long spatial_dof(const Mesh& mesh, int order);

/// "MxxMy (dof)" or "MxxMyxMz (dof)".
[[nodiscard]] std::string dof_label(const Mesh& mesh, int order);

/// Samples each element on a uniform (density+1)^dim grid at every collocation
/// node and at `time_samples` uniform times (0 selects 4N+1).
[[nodiscard]] ErrorReport error_report(const Solution& solution, const GlobalSystem& system,
                                       int density = 10, int time_samples = 0);

} // namespace ieldtm
