#pragma once

// Trivariate counterpart of local_taylor2d: tables over k + p + h <= K whose
// layers h >= 2 follow from the transformed constant-coefficient PDE, leaving
// (K+1)^2 free coefficients per mode.

#include "ieldtm/local_taylor2d.hpp"
#include "ieldtm/problems.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace ieldtm {

struct Element3D {
    int i = 0;
    int j = 0;
    int r = 0;
    double xc = 0.0;
    double yc = 0.0;
    double zc = 0.0;
    double dx = 1.0;
    double dy = 1.0;
    double dz = 1.0;
};

class TransformTable3D {
public:
    TransformTable3D() = default;
    TransformTable3D(int order, int modes, int width = 1);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int size() const noexcept { return entries(order_); }

    [[nodiscard]] static int entries(int order) noexcept {
        return (order + 1) * (order + 2) * (order + 3) / 6;
    }
    [[nodiscard]] bool contains(int k, int p, int h) const noexcept {
        return k >= 0 && p >= 0 && h >= 0 && k + p + h <= order_;
    }
    [[nodiscard]] int index(int k, int p, int h) const noexcept {
        return offsets_[(static_cast<std::size_t>(h) * (order_ + 1) + p) * (order_ + 1) + k];
    }
    /// (k, p, h) of a flat offset.
    [[nodiscard]] const std::array<int, 3>& exponents(int idx) const noexcept {
        return exponents_[static_cast<std::size_t>(idx)];
    }

    [[nodiscard]] auto block(int k, int p, int h) {
        return data_.middleCols(static_cast<Eigen::Index>(index(k, p, h)) * width_, width_);
    }
    [[nodiscard]] auto block(int k, int p, int h) const {
        return data_.middleCols(static_cast<Eigen::Index>(index(k, p, h)) * width_, width_);
    }
    [[nodiscard]] auto block_at(int idx) const {
        return data_.middleCols(static_cast<Eigen::Index>(idx) * width_, width_);
    }

    [[nodiscard]] double at(int n, int k, int p, int h, int w = 0) const {
        return contains(k, p, h)
                   ? data_(n, static_cast<Eigen::Index>(index(k, p, h)) * width_ + w)
                   : 0.0;
    }
    void set(int n, int k, int p, int h, double value, int w = 0) {
        data_(n, static_cast<Eigen::Index>(index(k, p, h)) * width_ + w) = value;
    }

    [[nodiscard]] const Eigen::MatrixXd& data() const noexcept { return data_; }
    [[nodiscard]] Eigen::MatrixXd& data() noexcept { return data_; }

    [[nodiscard]] TransformTable3D column(int w) const;

private:
    int order_ = 0;
    int modes_ = 0;
    int width_ = 1;
    std::vector<int> offsets_; // (h, p, k) -> flat offset, -1 outside the simplex
    std::vector<std::array<int, 3>> exponents_;
    Eigen::MatrixXd data_;
};

/// Free coefficients per mode: C(k,p,0) for k+p <= K, then C(k,p,1) for
/// k+p <= K-1, each in the 2D simplex order (p outer, k inner).
struct UnknownLayout3D {
    [[nodiscard]] static int per_mode(int order) noexcept { return (order + 1) * (order + 1); }
    [[nodiscard]] static int slot(int order, int k, int p, int h) noexcept;
    [[nodiscard]] static std::array<int, 3> coefficient(int order, int slot) noexcept;
};

struct Coefficients3D {
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;
    double dx = 1.0;
    double dy = 1.0;
    double dz = 1.0;
};

void complete_layers_3d(TransformTable3D& table, const TransformTable3D* source,
                        const Coefficients3D& coeffs, const Eigen::MatrixXd& reduced);

[[nodiscard]] TransformTable3D complete_table_3d(const Eigen::MatrixXd& unknowns,
                                                 const TransformTable3D& source,
                                                 const Coefficients3D& coeffs,
                                                 const Eigen::MatrixXd& reduced);

[[nodiscard]] std::vector<double> evaluation_weights_3d(int order, double ox, double oy, double oz,
                                                        Derivative deriv);

[[nodiscard]] Eigen::MatrixXd evaluate_block_3d(const TransformTable3D& table,
                                                const std::vector<double>& weights);

[[nodiscard]] Eigen::VectorXd evaluate_3d(const TransformTable3D& table, const Element3D& element,
                                          double x, double y, double z, Derivative deriv);

[[nodiscard]] TransformTable3D source_transforms_3d(const ProblemSpec& problem,
                                                    const Element3D& element,
                                                    const Eigen::VectorXd& initial_column,
                                                    int order);

} // namespace ieldtm
