#pragma once

// Local Taylor representation on a 2D element.
//
// Every mode c_n of the reduced elliptic system is expanded about the element
// centre, c(x, y) = sum_{k+p<=K} C(k, p) (x - x_c)^k (y - y_c)^p. Only the rows
// p = 0 and p = 1 are free; the rest follow from the transformed PDE
//
//   Dx (k+1)(k+2) C(k+2,p) + Dy (p+1)(p+2) C(k,p+2)
//     - [ux * dC/dx](k,p) - [uy * dC/dy](k,p) - A C(k,p) = G(k,p)
//
// where [u * f](k,p) is the Cauchy product of Taylor tables (a plain scaling
// for constant velocities) and A is the reduced time operator coupling modes.

#include "ieldtm/problems.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace ieldtm {

enum class Derivative { Value, DX, DY, DZ };

struct Element2D {
    int i = 0;
    int j = 0;
    double xc = 0.0;
    double yc = 0.0;
    double dx = 1.0;
    double dy = 1.0;
};

/// Coefficient tensor over the simplex k + p <= K. Each entry is an N x W
/// block: W = 1 for ordinary tables, W > 1 when the columns carry the
/// response to several unknown vectors at once.
class TransformTable2D {
public:
    TransformTable2D() = default;
    TransformTable2D(int order, int modes, int width = 1);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int size() const noexcept { return entries(order_); }

    [[nodiscard]] static int entries(int order) noexcept { return (order + 1) * (order + 2) / 2; }
    [[nodiscard]] bool contains(int k, int p) const noexcept {
        return k >= 0 && p >= 0 && k + p <= order_;
    }
    /// Flat offset of (k, p); rows of constant p are contiguous.
    [[nodiscard]] int index(int k, int p) const noexcept {
        return p * (order_ + 1) - p * (p - 1) / 2 + k;
    }

    [[nodiscard]] auto block(int k, int p) {
        return data_.middleCols(static_cast<Eigen::Index>(index(k, p)) * width_, width_);
    }
    [[nodiscard]] auto block(int k, int p) const {
        return data_.middleCols(static_cast<Eigen::Index>(index(k, p)) * width_, width_);
    }
    [[nodiscard]] auto block_at(int idx) const {
        return data_.middleCols(static_cast<Eigen::Index>(idx) * width_, width_);
    }

    /// Entry (n, k, p) of column w; zero outside the simplex.
    [[nodiscard]] double at(int n, int k, int p, int w = 0) const {
        return contains(k, p) ? data_(n, static_cast<Eigen::Index>(index(k, p)) * width_ + w) : 0.0;
    }
    void set(int n, int k, int p, double value, int w = 0) {
        data_(n, static_cast<Eigen::Index>(index(k, p)) * width_ + w) = value;
    }

    [[nodiscard]] const Eigen::MatrixXd& data() const noexcept { return data_; }
    [[nodiscard]] Eigen::MatrixXd& data() noexcept { return data_; }

    /// Column w as a width-1 table.
    [[nodiscard]] TransformTable2D column(int w) const;

private:
    int order_ = 0;
    int modes_ = 0;
    int width_ = 1;
    Eigen::MatrixXd data_; // modes x (width * entries)
};

/// Free coefficients per mode: C(0,0)..C(K,0) followed by C(0,1)..C(K-1,1).
struct UnknownLayout2D {
    [[nodiscard]] static int per_mode(int order) noexcept { return 2 * order + 1; }
    [[nodiscard]] static int slot(int order, int k, int p) noexcept {
        return p == 0 ? k : order + 1 + k;
    }
    [[nodiscard]] static std::pair<int, int> coefficient(int order, int slot) noexcept {
        return slot <= order ? std::pair{slot, 0} : std::pair{slot - order - 1, 1};
    }
};

struct Coefficients2D {
    double vx = 0.0;
    double vy = 0.0;
    double dx = 1.0;
    double dy = 1.0;
};

/// Per-mode Taylor tables of the advection velocity (width 1, N modes).
/// Constant velocities are order-0 tables.
struct Advection2D {
    TransformTable2D ux;
    TransformTable2D uy;

    [[nodiscard]] static Advection2D constant(double vx, double vy, int modes);
};

/// Completes rows p >= 2 in place. Rows 0 and 1 must already hold the free
/// coefficients. `source` (same width) may be null for a homogeneous completion.
void complete_rows_2d(TransformTable2D& table, const TransformTable2D* source,
                      const Advection2D& advection, double diffusion_x, double diffusion_y,
                      const Eigen::MatrixXd& reduced);

/// Table from N x (2K+1) free coefficients laid out per UnknownLayout2D.
[[nodiscard]] TransformTable2D complete_table_2d(const Eigen::MatrixXd& unknowns,
                                                 const TransformTable2D& source,
                                                 const Coefficients2D& coeffs,
                                                 const Eigen::MatrixXd& reduced);

/// Variable-velocity variant used by the Burgers linearisation.
[[nodiscard]] TransformTable2D complete_table_2d(const Eigen::MatrixXd& unknowns,
                                                 const TransformTable2D& source,
                                                 const Advection2D& advection,
                                                 double diffusion_x, double diffusion_y,
                                                 const Eigen::MatrixXd& reduced);

/// Monomial weights w(k,p) such that sum_{k,p} w(k,p) C(k,p) is the requested
/// value or derivative at offset (ox, oy) from the centre.
[[nodiscard]] std::vector<double> evaluation_weights_2d(int order, double ox, double oy,
                                                        Derivative deriv);

/// N x W block sum_{k,p} w(k,p) C(k,p).
[[nodiscard]] Eigen::MatrixXd evaluate_block_2d(const TransformTable2D& table,
                                                const std::vector<double>& weights);

/// Values (or derivatives) of every mode at (x, y).
[[nodiscard]] Eigen::VectorXd evaluate_2d(const TransformTable2D& table, const Element2D& element,
                                          double x, double y, Derivative deriv);

/// G(k,p)[n] = initial_column[n] * (1/(k!p!)) d^{k+p} g at the element centre.
[[nodiscard]] TransformTable2D source_transforms_2d(const ProblemSpec& problem,
                                                    const Element2D& element,
                                                    const Eigen::VectorXd& initial_column,
                                                    int order);

} // namespace ieldtm
