#include "ieldtm/local_taylor2d.hpp"

#include "ieldtm/error.hpp"

#include <algorithm>
#include <string>

namespace ieldtm {

TransformTable2D::TransformTable2D(int order, int modes, int width)
    : order_(order), modes_(modes), width_(width) {
    IELDTM_REQUIRE(order >= 0, InvalidParameter, "Taylor order must be non-negative");
    IELDTM_REQUIRE(modes >= 1 && width >= 1, InvalidParameter, "table needs modes, width >= 1");
    data_ = Eigen::MatrixXd::Zero(modes, static_cast<Eigen::Index>(width) * entries(order));
}

TransformTable2D TransformTable2D::column(int w) const {
    TransformTable2D out(order_, modes_, 1);
    for (int idx = 0; idx < size(); ++idx)
        out.data_.col(idx) = data_.col(static_cast<Eigen::Index>(idx) * width_ + w);
    return out;
}

Advection2D Advection2D::constant(double vx, double vy, int modes) {
    Advection2D adv{TransformTable2D(0, modes), TransformTable2D(0, modes)};
    adv.ux.data().setConstant(vx);
    adv.uy.data().setConstant(vy);
    return adv;
}

namespace {

// Non-zero (r, s) entries of a velocity table, so constant and zero
// velocities cost nothing in the Cauchy products.
struct VelocityTerm {
    int r;
    int s;
    Eigen::VectorXd values;
};

std::vector<VelocityTerm> nonzero_terms(const TransformTable2D& u) {
    std::vector<VelocityTerm> terms;
    for (int s = 0; s <= u.order(); ++s)
        for (int r = 0; r + s <= u.order(); ++r) {
            Eigen::VectorXd v = u.block(r, s);
            if (!v.isZero(0.0)) terms.push_back({r, s, std::move(v)});
        }
    return terms;
}

} // namespace

void complete_rows_2d(TransformTable2D& table, const TransformTable2D* source,
                      const Advection2D& advection, double diffusion_x, double diffusion_y,
                      const Eigen::MatrixXd& reduced) {
    IELDTM_REQUIRE(diffusion_y != 0.0, SingularRecurrence,
                   "recurrence divides by D_y, which is zero");
    const int order = table.order();
    const int modes = table.modes();
    const int width = table.width();
    IELDTM_REQUIRE(reduced.rows() == modes && reduced.cols() == modes, InvalidParameter,
                   "reduced time operator must be N x N");
    IELDTM_REQUIRE(advection.ux.modes() == modes && advection.uy.modes() == modes,
                   InvalidParameter, "velocity tables must carry one entry per mode");
    if (source != nullptr)
        IELDTM_REQUIRE(source->order() == order && source->modes() == modes &&
                           source->width() == width,
                       InvalidParameter, "source table shape does not match");

    const auto ux = nonzero_terms(advection.ux);
    const auto uy = nonzero_terms(advection.uy);

    Eigen::MatrixXd acc(modes, width);
    for (int p = 0; p + 2 <= order; ++p) {
        for (int k = 0; k + p + 2 <= order; ++k) {
            if (source != nullptr)
                acc = source->block(k, p);
            else
                acc.setZero();
            acc.noalias() -= diffusion_x * (k + 1) * (k + 2) * table.block(k + 2, p);
            for (const auto& term : ux) {
                if (term.r > k || term.s > p) continue;
                acc.noalias() += (k - term.r + 1) *
                                 (term.values.asDiagonal() * table.block(k - term.r + 1, p - term.s));
            }
            for (const auto& term : uy) {
                if (term.r > k || term.s > p) continue;
                acc.noalias() += (p - term.s + 1) *
                                 (term.values.asDiagonal() * table.block(k - term.r, p - term.s + 1));
            }
            acc.noalias() += reduced * table.block(k, p);
            table.block(k, p + 2) = acc / (diffusion_y * (p + 1) * (p + 2));
        }
    }
}

namespace {

TransformTable2D seed_table(const Eigen::MatrixXd& unknowns, const TransformTable2D& source) {
    const int order = source.order();
    IELDTM_REQUIRE(unknowns.cols() == UnknownLayout2D::per_mode(order), InvalidParameter,
                   "expected 2K+1 free coefficients per mode, got " +
                       std::to_string(unknowns.cols()));
    IELDTM_REQUIRE(unknowns.rows() == source.modes(), InvalidParameter,
                   "unknowns and source disagree on the number of modes");
    TransformTable2D table(order, source.modes(), 1);
    for (int s = 0; s < unknowns.cols(); ++s) {
        const auto [k, p] = UnknownLayout2D::coefficient(order, s);
        table.block(k, p) = unknowns.col(s);
    }
    return table;
}

} // namespace

TransformTable2D complete_table_2d(const Eigen::MatrixXd& unknowns, const TransformTable2D& source,
                                   const Coefficients2D& coeffs, const Eigen::MatrixXd& reduced) {
    return complete_table_2d(unknowns, source,
                             Advection2D::constant(coeffs.vx, coeffs.vy, source.modes()), coeffs.dx,
                             coeffs.dy, reduced);
}

TransformTable2D complete_table_2d(const Eigen::MatrixXd& unknowns, const TransformTable2D& source,
                                   const Advection2D& advection, double diffusion_x,
                                   double diffusion_y, const Eigen::MatrixXd& reduced) {
    TransformTable2D table = seed_table(unknowns, source);
    complete_rows_2d(table, &source, advection, diffusion_x, diffusion_y, reduced);
    return table;
}

std::vector<double> evaluation_weights_2d(int order, double ox, double oy, Derivative deriv) {
    IELDTM_REQUIRE(deriv != Derivative::DZ, InvalidParameter, "no z-derivative in 2D");
    std::vector<double> px(static_cast<std::size_t>(order) + 2, 0.0);
    std::vector<double> py(static_cast<std::size_t>(order) + 2, 0.0);
    px[0] = py[0] = 1.0;
    for (int m = 1; m <= order; ++m) {
        px[m] = px[m - 1] * ox;
        py[m] = py[m - 1] * oy;
    }
    std::vector<double> w(static_cast<std::size_t>(TransformTable2D::entries(order)), 0.0);
    std::size_t idx = 0;
    for (int p = 0; p <= order; ++p) {
        for (int k = 0; k + p <= order; ++k, ++idx) {
            switch (deriv) {
            case Derivative::Value: w[idx] = px[k] * py[p]; break;
            case Derivative::DX: w[idx] = k > 0 ? k * px[k - 1] * py[p] : 0.0; break;
            case Derivative::DY: w[idx] = p > 0 ? p * px[k] * py[p - 1] : 0.0; break;
            case Derivative::DZ: break;
            }
        }
    }
    return w;
}

Eigen::MatrixXd evaluate_block_2d(const TransformTable2D& table, const std::vector<double>& weights) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(table.modes(), table.width());
    for (int idx = 0; idx < table.size(); ++idx)
        if (weights[idx] != 0.0) out.noalias() += weights[idx] * table.block_at(idx);
    return out;
}

Eigen::VectorXd evaluate_2d(const TransformTable2D& table, const Element2D& element, double x,
                            double y, Derivative deriv) {
    const auto w = evaluation_weights_2d(table.order(), x - element.xc, y - element.yc, deriv);
    return evaluate_block_2d(table, w).col(0);
}

TransformTable2D source_transforms_2d(const ProblemSpec& problem, const Element2D& element,
                                      const Eigen::VectorXd& initial_column, int order) {
    TransformTable2D g(order, static_cast<int>(initial_column.size()), 1);
    const Point centre{element.xc, element.yc, 0.0};
    for (int p = 0; p <= order; ++p)
        for (int k = 0; k + p <= order; ++k)
            g.block(k, p) = initial_column * problem.initial_coefficient(centre, {k, p, 0});
    return g;
}

} // namespace ieldtm
