#pragma once

// Uniform rectangular element grids and the scheme parameters of the
// collocation method.

#include "ieldtm/problems.hpp"

#include <array>

namespace ieldtm {

enum class BoundaryMode {
    ValueOnly,           // Dirichlet value at each boundary point
    ValuePlusTangential, // value plus the in-face derivatives of the data
};

class Mesh {
public:
    Mesh() = default;
    /// bounds holds a, b, c, d[, e, f]; counts holds M_x, M_y[, M_z].
    Mesh(int dimension, const std::array<double, 6>& bounds, const std::array<int, 3>& counts);

    [[nodiscard]] static Mesh square(const std::array<double, 6>& bounds, int mx, int my);
    [[nodiscard]] static Mesh cube(const std::array<double, 6>& bounds, int mx, int my, int mz);

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] const std::array<double, 6>& bounds() const noexcept { return bounds_; }
    [[nodiscard]] int count(int axis) const noexcept { return counts_[axis]; }
    [[nodiscard]] double lower(int axis) const noexcept { return bounds_[2 * axis]; }
    [[nodiscard]] double upper(int axis) const noexcept { return bounds_[2 * axis + 1]; }
    [[nodiscard]] double width(int axis) const noexcept { return widths_[axis]; }
    [[nodiscard]] int element_count() const noexcept;

    /// e = i M_y + j in 2D and (i M_y + j) M_z + r in 3D.
    [[nodiscard]] int element_index(const std::array<int, 3>& ijk) const noexcept;
    [[nodiscard]] std::array<int, 3> element_ijk(int e) const noexcept;
    [[nodiscard]] Point centre(int e) const noexcept;
    /// Element containing p; points on shared faces go to the lower element.
    [[nodiscard]] int locate(const Point& p) const noexcept;

private:
    int dimension_ = 2;
    std::array<double, 6> bounds_{0.0, 1.0, 0.0, 1.0, 0.0, 1.0};
    std::array<int, 3> counts_{1, 1, 1};
    std::array<double, 3> widths_{1.0, 1.0, 1.0};
};

struct SchemeParams {
    std::array<double, 3> theta{0.5, 0.5, 0.5};
    int partitions = 14; // S
    int order = 10;      // K
    BoundaryMode boundary_mode = BoundaryMode::ValuePlusTangential;
    /// Share one unknowns-to-table map across elements when coefficients are constant.
    bool reuse_element_map = true;

    void validate(int dimension) const;
};

} // namespace ieldtm
