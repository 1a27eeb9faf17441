#include "ieldtm/cheb_time.hpp"

#include "ieldtm/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ieldtm {

namespace {

void check_parameters(int order, double final_time) {
    IELDTM_REQUIRE(order >= 1 && order <= kMaxTimeOrder, InvalidParameter,
                   "time order N must lie in [1, " + std::to_string(kMaxTimeOrder) + "], got " +
                       std::to_string(order));
    IELDTM_REQUIRE(final_time > 0.0 && std::isfinite(final_time), InvalidParameter,
                   "final time must be positive");
}

double endpoint_factor(int n, int order) { return (n == 0 || n == order) ? 0.5 : 1.0; }

// T_j at x = (2t - t_f)/t_f, via the three-term recurrence.
std::vector<double> chebyshev_values(int order, double x) {
    std::vector<double> values(static_cast<std::size_t>(order) + 1);
    values[0] = 1.0;
    if (order >= 1) values[1] = x;
    for (int j = 2; j <= order; ++j) values[j] = 2.0 * x * values[j - 1] - values[j - 2];
    return values;
}

} // namespace

double shifted_chebyshev_at_node(int j, int n, int order) {
    // (2 t_n - t_f)/t_f = -cos(pi n / N) = cos(pi (N - n) / N)
    const long long phase = static_cast<long long>(j) * (order - n) % (2LL * order);
    return std::cos(std::numbers::pi * static_cast<double>(phase) / order);
}

std::vector<double> collocation_points(int order, double final_time) {
    check_parameters(order, final_time);
    std::vector<double> nodes(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        // (1 - cos a)/2 == sin^2(a/2); avoids cancellation near t = 0
        const double s = std::sin(std::numbers::pi * n / (2.0 * order));
        nodes[n] = final_time * s * s;
    }
    nodes.front() = 0.0;
    nodes.back() = final_time;
    return nodes;
}

Eigen::MatrixXd differentiation_matrix(int order, double final_time) {
    check_parameters(order, final_time);
    const int size = order + 1;
    const double mu = 2.0 / final_time;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) {
        const double wi = (i % 2 == 0 ? 1.0 : -1.0) * endpoint_factor(i, order);
        double row_sum = 0.0;
        for (int j = 0; j < size; ++j) {
            if (i == j) continue;
            const double wj = (j % 2 == 0 ? 1.0 : -1.0) * endpoint_factor(j, order);
            // x_i - x_j on the reference grid x_n = -cos(pi n / N)
            const double gap = 2.0 * std::sin(std::numbers::pi * (i + j) / (2.0 * order)) *
                               std::sin(std::numbers::pi * (i - j) / (2.0 * order));
            d(i, j) = mu * (wj / wi) / gap;
            row_sum += d(i, j);
        }
        d(i, i) = -row_sum;
    }
    return d;
}

ReducedTimeOperator reduce_with_initial(const TimeDiscretization& disc) {
    const int n = disc.order();
    return {disc.full().bottomRightCorner(n, n), disc.full().col(0).tail(n)};
}

TimeDiscretization::TimeDiscretization(int order, double final_time)
    : order_(order),
      final_time_(final_time),
      nodes_(collocation_points(order, final_time)),
      full_(differentiation_matrix(order, final_time)) {
    reduced_ = reduce_with_initial(*this);
}

std::vector<double> TimeDiscretization::chebyshev_coefficients(std::span<const double> nodal) const {
    IELDTM_REQUIRE(nodal.size() == nodes_.size(), InvalidParameter,
                   "nodal vector length must be N+1");
    std::vector<double> coeffs(nodes_.size(), 0.0);
    for (int j = 0; j <= order_; ++j) {
        double sum = 0.0;
        for (int n = 0; n <= order_; ++n)
            sum += endpoint_factor(n, order_) * shifted_chebyshev_at_node(j, n, order_) * nodal[n];
        coeffs[j] = 2.0 / order_ * sum;
    }
    return coeffs;
}

double TimeDiscretization::interpolate(std::span<const double> nodal, double t) const {
    const auto coeffs = chebyshev_coefficients(nodal);
    const auto tj = chebyshev_values(order_, (2.0 * t - final_time_) / final_time_);
    double value = 0.0;
    for (int j = 0; j <= order_; ++j) value += endpoint_factor(j, order_) * coeffs[j] * tj[j];
    return value;
}

Eigen::RowVectorXd TimeDiscretization::interpolation_row(double t) const {
    const auto tj = chebyshev_values(order_, (2.0 * t - final_time_) / final_time_);
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(order_ + 1);
    for (int n = 0; n <= order_; ++n) {
        double sum = 0.0;
        for (int j = 0; j <= order_; ++j)
            sum += endpoint_factor(j, order_) * tj[j] * shifted_chebyshev_at_node(j, n, order_);
        row[n] = 2.0 / order_ * endpoint_factor(n, order_) * sum;
    }
    return row;
}

} // namespace ieldtm
