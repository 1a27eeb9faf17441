#include "ieldtm/error.hpp"
#include "ieldtm/local_taylor3d.hpp"
#include "ieldtm/problems.hpp"

#include "polynomial_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace ieldtm;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937& rng, int rows, int cols) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = uni(rng);
    return m;
}

TransformTable3D random_table(std::mt19937& rng, int order, int modes) {
    TransformTable3D t(order, modes);
    t.data() = random_matrix(rng, modes, t.size());
    return t;
}

} // namespace

TEST_SUITE("local_taylor3d") {

TEST_CASE("zero input completes to zero") {
    std::mt19937 rng(1);
    const int K = 5, N = 2;
    const auto t = complete_table_3d(Eigen::MatrixXd::Zero(N, UnknownLayout3D::per_mode(K)), TransformTable3D(K, N),
                                     Coefficients3D{1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, random_matrix(rng, N, N));
    CHECK(t.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("table indexing covers the simplex once") {
    for (int K = 0; K <= 8; ++K) {
        const TransformTable3D t(K, 1);
        std::set<int> seen;
        for (int h = 0; h <= K; ++h)
            for (int p = 0; p + h <= K; ++p)
                for (int k = 0; k + p + h <= K; ++k) {
                    const int idx = t.index(k, p, h);
                    CHECK(seen.insert(idx).second);
                    CHECK(t.exponents(idx) == std::array<int, 3>{k, p, h});
                }
        CHECK(static_cast<int>(seen.size()) == TransformTable3D::entries(K));
        CHECK(t.at(0, K + 1, 0, 0) == 0.0);
    }
}

TEST_CASE("completed tables match the symbolic residual oracle") {
    std::mt19937 rng(77);
    for (int K = 1; K <= 4; ++K)
        for (int trial = 0; trial < 20; ++trial) {
            const int N = 2;
            const Coefficients3D coeffs{0.6 * (trial % 3 - 1), -0.3 * (trial % 2), 0.2 * (trial % 4),
                                        0.5 + 0.1 * trial, 1.0, 0.7 + 0.05 * trial};
            Eigen::MatrixXd reduced = random_matrix(rng, N, N);
            if (trial % 2 == 0) reduced = Eigen::MatrixXd(reduced.diagonal().asDiagonal());
            const Eigen::MatrixXd unknowns = random_matrix(rng, N, UnknownLayout3D::per_mode(K));
            const TransformTable3D source = random_table(rng, K, N);
            const auto table = complete_table_3d(unknowns, source, coeffs, reduced);

            oracle::Operator op;
            op.dimension = 3;
            op.order = K;
            op.modes = N;
            op.diffusion = {coeffs.dx, coeffs.dy, coeffs.dz};
            op.velocity.assign(N, {oracle::Polynomial{{{0, 0, 0}, coeffs.vx}},
                                   oracle::Polynomial{{{0, 0, 0}, coeffs.vy}},
                                   oracle::Polynomial{{{0, 0, 0}, coeffs.vz}}});
            op.reduced = reduced;
            const auto expected = oracle::complete(
                op,
                [&](int n, const oracle::Exponent& e) {
                    return unknowns(n, UnknownLayout3D::slot(K, e[0], e[1], e[2]));
                },
                [&](int n, const oracle::Exponent& e) { return source.at(n, e[0], e[1], e[2]); });
            double gap = 0.0;
            for (int n = 0; n < N; ++n)
                for (const auto& [e, c] : expected[n])
                    gap = std::max(gap, std::abs(table.at(n, e[0], e[1], e[2]) - c) / std::max(1.0, std::abs(c)));
            CAPTURE(K);
            CAPTURE(trial);
            CHECK(gap <= 1e-10);
        }
}

TEST_CASE("completion is linear in unknowns and source") {
    std::mt19937 rng(8);
    const int K = 7, N = 3;
    const Coefficients3D coeffs{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    const Eigen::MatrixXd reduced = random_matrix(rng, N, N);
    const Eigen::MatrixXd u1 = random_matrix(rng, N, UnknownLayout3D::per_mode(K));
    const Eigen::MatrixXd u2 = random_matrix(rng, N, UnknownLayout3D::per_mode(K));
    const TransformTable3D g1 = random_table(rng, K, N);
    const TransformTable3D g2 = random_table(rng, K, N);
    TransformTable3D g12(K, N);
    g12.data() = g1.data() + g2.data();
    const auto a = complete_table_3d(u1, g1, coeffs, reduced);
    const auto b = complete_table_3d(u2, g2, coeffs, reduced);
    const auto ab = complete_table_3d(u1 + u2, g12, coeffs, reduced);
    const double scale = std::max(1.0, ab.data().cwiseAbs().maxCoeff());
    CHECK((ab.data() - a.data() - b.data()).cwiseAbs().maxCoeff() <= 1e-13 * scale);
}

TEST_CASE("evaluation at the centre and at offsets") {
    std::mt19937 rng(4);
    const TransformTable3D t = random_table(rng, 4, 2);
    const Element3D el{0, 0, 0, 0.25, 0.5, 0.75, 0.5, 0.5, 0.5};
    const auto value = evaluate_3d(t, el, 0.25, 0.5, 0.75, Derivative::Value);
    const auto dz = evaluate_3d(t, el, 0.25, 0.5, 0.75, Derivative::DZ);
    for (int n = 0; n < 2; ++n) {
        CHECK(value(n) == t.at(n, 0, 0, 0));
        CHECK(dz(n) == t.at(n, 0, 0, 1));
    }
    TransformTable3D xyz(3, 1);
    xyz.set(0, 1, 1, 1, 1.0);
    const Element3D shifted{0, 0, 0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
    CHECK(evaluate_3d(xyz, shifted, 1.0, 2.0, 3.0, Derivative::Value)(0) == doctest::Approx(6.0));
    CHECK(evaluate_3d(xyz, shifted, 1.0, 2.0, 3.0, Derivative::DY)(0) == doctest::Approx(3.0));
}

TEST_CASE("source transforms") {
    const Element3D el{0, 0, 0, 0.5, 0.5, 0.5, 1.0, 1.0, 1.0};
    ProblemSpec zero = problem4();
    zero.initial_coefficient = [](const Point&, const MultiIndex&) { return 0.0; };
    CHECK(source_transforms_3d(zero, el, Eigen::VectorXd::Ones(2), 4).data().cwiseAbs().maxCoeff() == 0.0);

    ProblemSpec sum = problem4();
    sum.initial_coefficient = [](const Point& p, const MultiIndex& a) {
        const int total = a[0] + a[1] + a[2];
        if (total == 0) return p[0] + p[1] + p[2];
        return total == 1 ? 1.0 : 0.0;
    };
    const double c = 0.8;
    const auto g = source_transforms_3d(sum, el, Eigen::VectorXd::Constant(1, c), 3);
    CHECK(g.at(0, 0, 0, 0) == doctest::Approx(1.5 * c));
    CHECK(g.at(0, 1, 0, 0) == doctest::Approx(c));
    CHECK(g.at(0, 0, 1, 0) == doctest::Approx(c));
    CHECK(g.at(0, 0, 0, 1) == doctest::Approx(c));
    CHECK(g.at(0, 1, 1, 0) == 0.0);

    const auto p4 = source_transforms_3d(problem4(), el, Eigen::VectorXd::Ones(1), 4);
    CHECK(p4.at(0, 2, 0, 0) / p4.at(0, 0, 0, 0) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("unknown count identity and layout round trip") {
    for (int K = 1; K <= 12; ++K) {
        CHECK(UnknownLayout3D::per_mode(K) == (K + 1) * (K + 2) / 2 + K * (K + 1) / 2);
        CHECK(UnknownLayout3D::per_mode(K) == (K + 1) * (K + 1));
        std::set<int> seen;
        for (int s = 0; s < UnknownLayout3D::per_mode(K); ++s) {
            const auto e = UnknownLayout3D::coefficient(K, s);
            CHECK(e[2] <= 1);
            CHECK(e[0] + e[1] + e[2] <= K);
            CHECK(UnknownLayout3D::slot(K, e[0], e[1], e[2]) == s);
            seen.insert(TransformTable3D(K, 1).index(e[0], e[1], e[2]));
        }
        CHECK(static_cast<int>(seen.size()) == (K + 1) * (K + 1));
    }
}

TEST_CASE("zero diffusion along z is singular") {
    CHECK_THROWS_AS((void)complete_table_3d(Eigen::MatrixXd::Zero(1, 9), TransformTable3D(2, 1),
                                            Coefficients3D{0.0, 0.0, 0.0, 1.0, 1.0, 0.0}, Eigen::MatrixXd::Zero(1, 1)),
                    SingularRecurrence);
}

} // TEST_SUITE
