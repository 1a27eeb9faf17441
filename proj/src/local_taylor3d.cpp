#include "ieldtm/local_taylor3d.hpp"

#include "ieldtm/error.hpp"

#include <string>

namespace ieldtm {

TransformTable3D::TransformTable3D(int order, int modes, int width)
    : order_(order), modes_(modes), width_(width) {
    IELDTM_REQUIRE(order >= 0, InvalidParameter, "Taylor order must be non-negative");
    IELDTM_REQUIRE(modes >= 1 && width >= 1, InvalidParameter, "table needs modes, width >= 1");
    const std::size_t side = static_cast<std::size_t>(order) + 1;
    offsets_.assign(side * side * side, -1);
    exponents_.reserve(static_cast<std::size_t>(entries(order)));
    int next = 0;
    for (int h = 0; h <= order; ++h)
        for (int p = 0; p + h <= order; ++p)
            for (int k = 0; k + p + h <= order; ++k) {
                offsets_[(static_cast<std::size_t>(h) * side + p) * side + k] = next++;
                exponents_.push_back({k, p, h});
            }
    data_ = Eigen::MatrixXd::Zero(modes, static_cast<Eigen::Index>(width) * entries(order));
}

TransformTable3D TransformTable3D::column(int w) const {
    TransformTable3D out(order_, modes_, 1);
    for (int idx = 0; idx < size(); ++idx)
        out.data_.col(idx) = data_.col(static_cast<Eigen::Index>(idx) * width_ + w);
    return out;
}

int UnknownLayout3D::slot(int order, int k, int p, int h) noexcept {
    if (h == 0) return p * (order + 1) - p * (p - 1) / 2 + k;
    return TransformTable2D::entries(order) + p * order - p * (p - 1) / 2 + k;
}

std::array<int, 3> UnknownLayout3D::coefficient(int order, int slot) noexcept {
    int h = 0;
    int m = order;
    if (slot >= TransformTable2D::entries(order)) {
        slot -= TransformTable2D::entries(order);
        h = 1;
        m = order - 1;
    }
    int p = 0;
    while (slot > m - p) {
        slot -= m - p + 1;
        ++p;
    }
    return {slot, p, h};
}

void complete_layers_3d(TransformTable3D& table, const TransformTable3D* source,
                        const Coefficients3D& c, const Eigen::MatrixXd& reduced) {
    IELDTM_REQUIRE(c.dz != 0.0, SingularRecurrence, "recurrence divides by D_z, which is zero");
    const int order = table.order();
    const int modes = table.modes();
    const int width = table.width();
    IELDTM_REQUIRE(reduced.rows() == modes && reduced.cols() == modes, InvalidParameter,
                   "reduced time operator must be N x N");
    if (source != nullptr)
        IELDTM_REQUIRE(source->order() == order && source->modes() == modes &&
                           source->width() == width,
                       InvalidParameter, "source table shape does not match");

    Eigen::MatrixXd acc(modes, width);
    for (int h = 0; h + 2 <= order; ++h) {
        for (int p = 0; p + h + 2 <= order; ++p) {
            for (int k = 0; k + p + h + 2 <= order; ++k) {
                if (source != nullptr)
                    acc = source->block(k, p, h);
                else
                    acc.setZero();
                acc.noalias() -= c.dx * (k + 1) * (k + 2) * table.block(k + 2, p, h);
                acc.noalias() -= c.dy * (p + 1) * (p + 2) * table.block(k, p + 2, h);
                if (c.vx != 0.0) acc.noalias() += c.vx * (k + 1) * table.block(k + 1, p, h);
                if (c.vy != 0.0) acc.noalias() += c.vy * (p + 1) * table.block(k, p + 1, h);
                if (c.vz != 0.0) acc.noalias() += c.vz * (h + 1) * table.block(k, p, h + 1);
                acc.noalias() += reduced * table.block(k, p, h);
                table.block(k, p, h + 2) = acc / (c.dz * (h + 1) * (h + 2));
            }
        }
    }
}

TransformTable3D complete_table_3d(const Eigen::MatrixXd& unknowns, const TransformTable3D& source,
                                   const Coefficients3D& coeffs, const Eigen::MatrixXd& reduced) {
    const int order = source.order();
    IELDTM_REQUIRE(unknowns.cols() == UnknownLayout3D::per_mode(order), InvalidParameter,
                   "expected (K+1)^2 free coefficients per mode, got " +
                       std::to_string(unknowns.cols()));
    IELDTM_REQUIRE(unknowns.rows() == source.modes(), InvalidParameter,
                   "unknowns and source disagree on the number of modes");
    TransformTable3D table(order, source.modes(), 1);
    for (int s = 0; s < unknowns.cols(); ++s) {
        const auto [k, p, h] = UnknownLayout3D::coefficient(order, s);
        table.block(k, p, h) = unknowns.col(s);
    }
    complete_layers_3d(table, &source, coeffs, reduced);
    return table;
}

std::vector<double> evaluation_weights_3d(int order, double ox, double oy, double oz,
                                          Derivative deriv) {
    std::vector<double> px(static_cast<std::size_t>(order) + 1);
    std::vector<double> py(px.size());
    std::vector<double> pz(px.size());
    px[0] = py[0] = pz[0] = 1.0;
    for (int m = 1; m <= order; ++m) {
        px[m] = px[m - 1] * ox;
        py[m] = py[m - 1] * oy;
        pz[m] = pz[m - 1] * oz;
    }
    std::vector<double> w(static_cast<std::size_t>(TransformTable3D::entries(order)), 0.0);
    std::size_t idx = 0;
    for (int h = 0; h <= order; ++h)
        for (int p = 0; p + h <= order; ++p)
            for (int k = 0; k + p + h <= order; ++k, ++idx) {
                switch (deriv) {
                case Derivative::Value: w[idx] = px[k] * py[p] * pz[h]; break;
                case Derivative::DX: w[idx] = k > 0 ? k * px[k - 1] * py[p] * pz[h] : 0.0; break;
                case Derivative::DY: w[idx] = p > 0 ? p * px[k] * py[p - 1] * pz[h] : 0.0; break;
                case Derivative::DZ: w[idx] = h > 0 ? h * px[k] * py[p] * pz[h - 1] : 0.0; break;
                }
            }
    return w;
}

Eigen::MatrixXd evaluate_block_3d(const TransformTable3D& table, const std::vector<double>& weights) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(table.modes(), table.width());
    for (int idx = 0; idx < table.size(); ++idx)
        if (weights[idx] != 0.0) out.noalias() += weights[idx] * table.block_at(idx);
    return out;
}

Eigen::VectorXd evaluate_3d(const TransformTable3D& table, const Element3D& element, double x,
                            double y, double z, Derivative deriv) {
    const auto w = evaluation_weights_3d(table.order(), x - element.xc, y - element.yc,
                                         z - element.zc, deriv);
    return evaluate_block_3d(table, w).col(0);
}

TransformTable3D source_transforms_3d(const ProblemSpec& problem, const Element3D& element,
                                      const Eigen::VectorXd& initial_column, int order) {
    TransformTable3D g(order, static_cast<int>(initial_column.size()), 1);
    const Point centre{element.xc, element.yc, element.zc};
    for (int idx = 0; idx < g.size(); ++idx) {
        const auto& e = g.exponents(idx);
        g.data().col(idx) = initial_column * problem.initial_coefficient(centre, {e[0], e[1], e[2]});
    }
    return g;
}

} // namespace ieldtm
