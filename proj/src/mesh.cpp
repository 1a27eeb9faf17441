#include "ieldtm/mesh.hpp"

#include "ieldtm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ieldtm {

Mesh::Mesh(int dimension, const std::array<double, 6>& bounds, const std::array<int, 3>& counts)
    : dimension_(dimension), bounds_(bounds), counts_(counts) {
    IELDTM_REQUIRE(dimension == 2 || dimension == 3, InvalidParameter,
                   "mesh dimension must be 2 or 3");
    for (int d = 0; d < 3; ++d) {
        if (d >= dimension) {
            counts_[d] = 1;
            widths_[d] = 1.0;
            continue;
        }
        IELDTM_REQUIRE(counts[d] >= 1, InvalidParameter,
                       "element count along axis " + std::to_string(d) + " must be >= 1");
        IELDTM_REQUIRE(bounds[2 * d] < bounds[2 * d + 1], InvalidParameter,
                       "domain bounds along axis " + std::to_string(d) + " must be ordered");
        widths_[d] = (bounds[2 * d + 1] - bounds[2 * d]) / counts[d];
    }
}

Mesh Mesh::square(const std::array<double, 6>& bounds, int mx, int my) {
    return Mesh(2, bounds, {mx, my, 1});
}

Mesh Mesh::cube(const std::array<double, 6>& bounds, int mx, int my, int mz) {
    return Mesh(3, bounds, {mx, my, mz});
}

int Mesh::element_count() const noexcept { return counts_[0] * counts_[1] * counts_[2]; }

int Mesh::element_index(const std::array<int, 3>& ijk) const noexcept {
    return (ijk[0] * counts_[1] + ijk[1]) * counts_[2] + ijk[2];
}

std::array<int, 3> Mesh::element_ijk(int e) const noexcept {
    const int r = e % counts_[2];
    const int rest = e / counts_[2];
    return {rest / counts_[1], rest % counts_[1], r};
}

Point Mesh::centre(int e) const noexcept {
    const auto ijk = element_ijk(e);
    Point c{0.0, 0.0, 0.0};
    for (int d = 0; d < dimension_; ++d) c[d] = bounds_[2 * d] + (ijk[d] + 0.5) * widths_[d];
    return c;
}

int Mesh::locate(const Point& p) const noexcept {
    std::array<int, 3> ijk{0, 0, 0};
    for (int d = 0; d < dimension_; ++d) {
        const double s = (p[d] - bounds_[2 * d]) / widths_[d];
        int i = static_cast<int>(std::ceil(s)) - 1;
        ijk[d] = std::clamp(i, 0, counts_[d] - 1);
    }
    return element_index(ijk);
}

void SchemeParams::validate(int dimension) const {
    for (int d = 0; d < dimension; ++d)
        IELDTM_REQUIRE(theta[d] >= 0.0 && theta[d] <= 1.0, InvalidParameter,
                       "direction parameter theta must lie in [0, 1]");
    IELDTM_REQUIRE(partitions >= 1, InvalidParameter, "edge partition count S must be >= 1");
    IELDTM_REQUIRE(order >= 1, InvalidParameter, "Taylor order K must be >= 1");
}

} // namespace ieldtm
