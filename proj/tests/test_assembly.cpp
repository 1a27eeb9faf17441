#include "ieldtm/assembly.hpp"
#include "ieldtm/error.hpp"
#include "ieldtm/error_report.hpp"
#include "ieldtm/least_squares.hpp"
#include "ieldtm/picard.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace ieldtm;

namespace {

constexpr std::array<double, 6> kUnit{0.0, 1.0, 0.0, 1.0, 0.0, 1.0};

SchemeParams scheme(int order, int partitions, double theta = 0.5) {
    SchemeParams s;
    s.order = order;
    s.partitions = partitions;
    s.theta = {theta, theta, theta};
    return s;
}

ProblemSpec constant_linear(double value, double final_time) {
    ProblemSpec s;
    s.name = "constant";
    s.dimension = 2;
    s.bounds = {0.0, 1.0, 0.0, 1.0, 0.0, 0.0};
    s.final_time = final_time;
    s.exact = [value](const Point&, double) { return value; };
    s.exact_gradient = [](const Point&, double) { return Point{0.0, 0.0, 0.0}; };
    s.initial_coefficient = [value](const Point&, const MultiIndex& a) {
        return a == MultiIndex{0, 0, 0} ? value : 0.0;
    };
    return s;
}

bool bitwise_equal(const GlobalSystem& a, const GlobalSystem& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return Eigen::MatrixXd(a.matrix) == Eigen::MatrixXd(b.matrix) && a.rhs == b.rhs;
}

double solve_error_2d(const Mesh& mesh, const SchemeParams& sp, const ProblemSpec& problem, int modes) {
    const TimeDiscretization time(modes, problem.final_time);
    const Assembly2D assembly = build_system_2d(mesh, sp, time, problem);
    const LeastSquaresResult ls = solve_least_squares(assembly.system);
    const Solution solution(mesh, time, problem, element_tables(assembly, ls.solution));
    return error_report(solution, assembly.system, 6).e_inf;
}

double solve_error_3d(const Mesh& mesh, const SchemeParams& sp, const ProblemSpec& problem, int modes) {
    const TimeDiscretization time(modes, problem.final_time);
    const Assembly3D assembly = build_system_3d(mesh, sp, time, problem);
    const LeastSquaresResult ls = solve_least_squares(assembly.system);
    const Solution solution(mesh, time, problem, element_tables(assembly, ls.solution));
    return error_report(solution, assembly.system, 4).e_inf;
}

} // namespace

TEST_SUITE("assembly") {

TEST_CASE("continuity points follow the direction parameter") {
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const auto central = continuity_points(mesh, 0, 0, 0.5, 2);
    REQUIRE(central.size() == 3);
    CHECK(central[0] == Point{0.5, 0.0, 0.0});
    CHECK(central[1] == Point{0.5, 0.25, 0.0});
    CHECK(central[2] == Point{0.5, 0.5, 0.0});
    for (const auto& p : continuity_points(mesh, 0, 0, 1.0, 2)) CHECK(p[0] == 0.25);
    for (const auto& p : continuity_points(mesh, 0, 0, 0.0, 2)) CHECK(p[0] == 0.75);
    const auto along_y = continuity_points(mesh, 0, 1, 0.5, 4);
    CHECK(along_y.size() == 5);
    for (const auto& p : along_y) CHECK(p[1] == 0.5);

    const int upper_x = mesh.element_index({1, 0, 0});
    CHECK_THROWS_AS((void)continuity_points(mesh, upper_x, 0, 0.5, 2), NoNeighbor);
    CHECK_THROWS_AS((void)continuity_points(mesh, 0, 2, 0.5, 2), InvalidParameter);

    const Mesh cube = Mesh::cube(kUnit, 2, 2, 2);
    CHECK(continuity_points(cube, 0, 2, 0.5, 3).size() == 16);
}

TEST_CASE("column counts follow the unknown layout") {
    const ProblemSpec p1 = problem1(0.25);
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const SystemShape shape = system_shape(mesh, scheme(10, 14), 15);
    CHECK(shape.cols == 1260);
    CHECK(shape.rows >= shape.cols);

    const Mesh cube = Mesh::cube(kUnit, 1, 1, 1);
    CHECK(system_shape(cube, scheme(12, 10), 10).cols == 1690);

    const TimeDiscretization time(3, 0.25);
    const Assembly2D a = build_system_2d(mesh, scheme(4, 6), time, p1);
    CHECK(a.system.cols() == 3 * 4 * 9);
    const SystemShape s = system_shape(mesh, scheme(4, 6), 3);
    CHECK(a.system.rows() == s.rows);
    CHECK(a.system.cols() == s.cols);
}

TEST_CASE("row accounting matches provenance") {
    const ProblemSpec p1 = problem1(0.25);
    for (auto mode : {BoundaryMode::ValueOnly, BoundaryMode::ValuePlusTangential}) {
        const Mesh mesh = Mesh::square(kUnit, 3, 2);
        SchemeParams sp = scheme(3, 5);
        sp.boundary_mode = mode;
        const TimeDiscretization time(2, 0.25);
        const auto a = build_system_2d(mesh, sp, time, p1);
        const GlobalSystem& g = a.system;
        CHECK(static_cast<long>(g.provenance.size()) == g.rows());
        CHECK(g.interface_rows + g.boundary_rows == g.rows());
        const int n = 2, pts = 6;
        const int interfaces = (3 - 1) * 2 + 3 * (2 - 1);
        CHECK(g.interface_rows == interfaces * pts * 2 * n);
        const int boundary_points = 2 * (3 + 2) * pts;
        const int per_point = mode == BoundaryMode::ValueOnly ? 1 : 2;
        CHECK(g.boundary_rows == boundary_points * per_point * n);
        int value = 0, normal = 0, bvalue = 0, btan = 0;
        for (const auto& r : g.provenance) {
            CHECK(r.mode >= 0);
            CHECK(r.mode < n);
            switch (r.kind) {
            case RowKind::InterfaceValue: ++value; CHECK(r.neighbor >= 0); break;
            case RowKind::InterfaceNormal: ++normal; break;
            case RowKind::BoundaryValue: ++bvalue; CHECK(r.neighbor == -1); break;
            case RowKind::BoundaryTangential: ++btan; break;
            }
        }
        CHECK(value == normal);
        CHECK(value + normal == g.interface_rows);
        CHECK(bvalue + btan == g.boundary_rows);
        if (mode == BoundaryMode::ValueOnly) CHECK(btan == 0);
    }
}

TEST_CASE("single-element systems do not depend on the direction parameter") {
    const ProblemSpec p1 = problem1(0.25);
    const TimeDiscretization t2(4, 0.25);
    const Mesh square = Mesh::square(kUnit, 1, 1);
    const auto ref = build_system_2d(square, scheme(6, 8, 0.5), t2, p1).system;
    for (double theta : {0.0, 0.3, 1.0}) CHECK(bitwise_equal(ref, build_system_2d(square, scheme(6, 8, theta), t2, p1).system));

    const ProblemSpec p4 = problem4(0.1);
    const TimeDiscretization t3(3, 0.1);
    const Mesh cube = Mesh::cube(kUnit, 1, 1, 1);
    const auto ref3 = build_system_3d(cube, scheme(3, 3, 0.5), t3, p4).system;
    for (double theta : {0.0, 1.0}) CHECK(bitwise_equal(ref3, build_system_3d(cube, scheme(3, 3, theta), t3, p4).system));
}

TEST_CASE("shared element maps give the same system as per-element maps") {
    const ProblemSpec p2 = problem2();
    const TimeDiscretization time(4, p2.final_time);
    const Mesh mesh = Mesh::square(kUnit, 2, 3);
    SchemeParams shared = scheme(5, 7);
    SchemeParams separate = shared;
    separate.reuse_element_map = false;
    CHECK(bitwise_equal(build_system_2d(mesh, shared, time, p2).system, build_system_2d(mesh, separate, time, p2).system));

    const ProblemSpec p4 = problem4(0.1);
    const TimeDiscretization t3(2, 0.1);
    const Mesh cube = Mesh::cube(kUnit, 2, 1, 2);
    SchemeParams shared3 = scheme(3, 3);
    SchemeParams separate3 = shared3;
    separate3.reuse_element_map = false;
    CHECK(bitwise_equal(build_system_3d(cube, shared3, t3, p4).system, build_system_3d(cube, separate3, t3, p4).system));
}

TEST_CASE("constant boundary data is recovered exactly at K = 1") {
    const ProblemSpec five = constant_linear(5.0, 0.25);
    const TimeDiscretization time(1, 0.25);
    const Mesh mesh = Mesh::square(kUnit, 1, 1);
    const auto a = build_system_2d(mesh, scheme(1, 2), time, five);
    const auto ls = solve_least_squares(a.system);
    REQUIRE(ls.solution.size() == 3);
    CHECK(ls.solution(UnknownLayout2D::slot(1, 0, 0)) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(std::abs(ls.solution(UnknownLayout2D::slot(1, 1, 0))) <= 1e-13);
    CHECK(std::abs(ls.solution(UnknownLayout2D::slot(1, 0, 1))) <= 1e-13);
    CHECK(ls.residual_norm <= 1e-12);
}

TEST_CASE("manufactured polynomials are recovered to 1e-10") {
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    for (double theta : {0.0, 0.5, 1.0}) {
        CAPTURE(theta);
        CHECK(solve_error_2d(mesh, scheme(4, 6, theta), manufactured2d({0.4, -0.7}, {1.0, 0.5}), 3) <= 1e-10);
        CHECK(solve_error_2d(mesh, scheme(5, 6, theta), manufactured2d(), 3) <= 1e-10);
    }
    const Mesh unit = Mesh::square(kUnit, 1, 1);
    CHECK(solve_error_2d(unit, scheme(4, 8), manufactured2d({1.0, 1.0}, {2.0, 1.0}), 3) <= 1e-10);
}

TEST_CASE("3D manufactured and trilinear fields are recovered") {
    const Mesh cube1 = Mesh::cube(kUnit, 1, 1, 1);
    for (int K : {3, 4}) CHECK(solve_error_3d(cube1, scheme(K, 4), trilinear3d(), 2) <= 1e-12);
    const Mesh cube2 = Mesh::cube(kUnit, 2, 2, 2);
    CHECK(solve_error_3d(cube2, scheme(4, 3), manufactured3d({0.2, 0.3, -0.1}, {1.0, 2.0, 0.5}), 3) <= 1e-10);
}

TEST_CASE("assembly preconditions") {
    const ProblemSpec p1 = problem1(0.25);
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    CHECK_THROWS_AS((void)build_system_2d(mesh, scheme(10, 1), TimeDiscretization(2, 0.25), p1), UnderdeterminedSystem);
    CHECK_THROWS_AS((void)build_system_2d(mesh, scheme(4, 6), TimeDiscretization(2, 0.5), p1), InvalidParameter);
    CHECK_THROWS_AS((void)build_system_2d(mesh, scheme(4, 6, 1.5), TimeDiscretization(2, 0.25), p1), InvalidParameter);
    CHECK_THROWS_AS((void)build_system_2d(mesh, scheme(4, 6), TimeDiscretization(2, 0.25), problem3(1.0)),
                    InvalidParameter);
    CHECK_THROWS_AS((void)build_system_3d(mesh, scheme(4, 6), TimeDiscretization(2, 0.1), problem4(0.1)),
                    InvalidParameter);
    ProblemSpec flat = problem2(1.0, 1.0);
    flat.diffusion[1] = 0.0;
    CHECK_THROWS_AS((void)build_system_2d(mesh, scheme(4, 6), TimeDiscretization(2, 0.1), flat), SingularRecurrence);
}

} // TEST_SUITE

TEST_SUITE("least_squares") {

TEST_CASE("scalar mean") {
    Eigen::SparseMatrix<double> m(2, 1);
    m.insert(0, 0) = 1.0;
    m.insert(1, 0) = 1.0;
    for (auto backend : {LeastSquaresBackend::SparseQR, LeastSquaresBackend::DenseCOD}) {
        LeastSquaresOptions opts;
        opts.backend = backend;
        const auto r = solve_least_squares(m, Eigen::Vector2d(0.0, 2.0), opts);
        CHECK(r.solution(0) == doctest::Approx(1.0));
        CHECK(r.residual_norm == doctest::Approx(std::sqrt(2.0)));
        CHECK(r.rank == 1);
    }
}

TEST_CASE("square invertible systems are solved exactly") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd dense(30, 30);
    for (Eigen::Index i = 0; i < dense.size(); ++i) dense.data()[i] = uni(rng);
    dense += 10.0 * Eigen::MatrixXd::Identity(30, 30);
    Eigen::VectorXd x(30);
    for (Eigen::Index i = 0; i < 30; ++i) x(i) = uni(rng);
    const Eigen::VectorXd b = dense * x;
    const auto r = solve_least_squares(dense.sparseView(), b);
    CHECK((r.solution - x).norm() <= 1e-12 * x.norm());
    CHECK(r.residual_norm <= 1e-12 * b.norm());
}

TEST_CASE("random tall systems match the normal equations") {
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd dense(200, 50);
    for (Eigen::Index i = 0; i < dense.size(); ++i) dense.data()[i] = uni(rng);
    Eigen::VectorXd b(200);
    for (Eigen::Index i = 0; i < 200; ++i) b(i) = uni(rng);
    const Eigen::VectorXd oracle = (dense.transpose() * dense).ldlt().solve(dense.transpose() * b);
    for (auto backend : {LeastSquaresBackend::SparseQR, LeastSquaresBackend::DenseCOD}) {
        LeastSquaresOptions opts;
        opts.backend = backend;
        const auto r = solve_least_squares(dense.sparseView(), b, opts);
        CHECK((r.solution - oracle).norm() <= 1e-9 * oracle.norm());
        CHECK(r.optimality <= 1e-10);
        CHECK(!r.rank_deficient);
    }
}

TEST_CASE("sparse and dense backends agree on a collocation system") {
    const ProblemSpec p1 = problem1(0.25);
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const TimeDiscretization time(4, 0.25);
    const auto a = build_system_2d(mesh, scheme(6, 8), time, p1);
    LeastSquaresOptions dense;
    dense.backend = LeastSquaresBackend::DenseCOD;
    const auto s = solve_least_squares(a.system);
    const auto d = solve_least_squares(a.system, dense);
    CHECK(s.optimality <= 1e-10);
    CHECK(d.optimality <= 1e-10);
    CHECK(std::abs(s.residual_norm - d.residual_norm) <= 1e-8 * std::max(1.0, d.residual_norm));
}

TEST_CASE("row order does not change the least-squares solution") {
    const ProblemSpec p2 = problem2();
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const TimeDiscretization time(3, p2.final_time);
    const auto a = build_system_2d(mesh, scheme(5, 7), time, p2);
    const Eigen::Index rows = a.system.rows();
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(rows);
    for (Eigen::Index i = 0; i < rows; ++i) perm.indices()(i) = static_cast<int>(rows - 1 - i);
    const Eigen::SparseMatrix<double> permuted = perm * a.system.matrix;
    const auto r1 = solve_least_squares(a.system);
    const auto r2 = solve_least_squares(permuted, perm * a.system.rhs);
    CHECK((r1.solution - r2.solution).cwiseAbs().maxCoeff() <= 1e-8 * r1.solution.cwiseAbs().maxCoeff());
}

TEST_CASE("underdetermined and mismatched systems are rejected") {
    Eigen::SparseMatrix<double> wide(1, 2);
    wide.insert(0, 0) = 1.0;
    CHECK_THROWS_AS((void)solve_least_squares(wide, Eigen::VectorXd::Ones(1)), UnderdeterminedSystem);
    Eigen::SparseMatrix<double> tall(3, 1);
    tall.insert(0, 0) = 1.0;
    CHECK_THROWS_AS((void)solve_least_squares(tall, Eigen::VectorXd::Ones(2)), InvalidParameter);
}

TEST_CASE("spectral norm estimate") {
    Eigen::SparseMatrix<double> diag(3, 3);
    diag.insert(0, 0) = 1.0;
    diag.insert(1, 1) = -4.0;
    diag.insert(2, 2) = 2.0;
    CHECK(spectral_norm_estimate(diag) == doctest::Approx(4.0).epsilon(1e-10));
}

} // TEST_SUITE

TEST_SUITE("picard") {

TEST_CASE("constant Burgers solution converges in one iteration") {
    const ProblemSpec s = constant_burgers(0.5, 1.0, 0.25);
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const TimeDiscretization time(4, 0.25);
    const auto r = picard_burgers_2d(mesh, scheme(4, 6), time, s);
    CHECK(r.iterations == 1);
    CHECK(r.solve.residual_norm <= 1e-12);
    const Solution solution(mesh, time, s, r.tables);
    CHECK(error_report(solution, r.assembly.system, 4).e_inf <= 1e-13);
}

TEST_CASE("an infinite tolerance returns the frozen-velocity linear solve") {
    const ProblemSpec s = problem3(2.0);
    const Mesh mesh = Mesh::square(kUnit, 1, 1);
    const TimeDiscretization time(6, 0.25);
    const SchemeParams sp = scheme(6, 10);
    PicardOptions opts;
    opts.tolerance = std::numeric_limits<double>::infinity();
    const auto r = picard_burgers_2d(mesh, sp, time, s, opts);
    CHECK(r.iterations == 1);
    const auto velocity = initial_velocity_2d(mesh, sp.order, time.order(), s);
    const auto linear = build_system_2d(mesh, sp, time, s, &velocity);
    const auto ls = solve_least_squares(linear.system);
    CHECK(ls.solution == r.solve.solution);
}

TEST_CASE("Burgers front converges within twenty iterations") {
    const ProblemSpec s = problem3(2.0);
    const Mesh mesh = Mesh::square(kUnit, 1, 1);
    const TimeDiscretization time(8, 0.25);
    const auto r = picard_burgers_2d(mesh, scheme(8, 12), time, s);
    CHECK(r.iterations <= 20);
    CHECK(r.history.size() == static_cast<std::size_t>(r.iterations));
    const Solution solution(mesh, time, s, r.tables);
    CHECK(error_report(solution, r.assembly.system, 6).e_inf <= 1e-6);
}

TEST_CASE("iteration cap raises non-convergence") {
    const ProblemSpec s = problem3(2.0);
    const Mesh mesh = Mesh::square(kUnit, 1, 1);
    const TimeDiscretization time(4, 0.25);
    PicardOptions opts;
    opts.tolerance = 0.0;
    opts.stagnation_tolerance = 0.0;
    opts.max_iterations = 2;
    try {
        (void)picard_burgers_2d(mesh, scheme(4, 8), time, s, opts);
        FAIL("expected non-convergence");
    } catch (const NonConvergence& ex) {
        CHECK(ex.iterations() == 2);
        CHECK(ex.last_change() > 0.0);
    }
}

TEST_CASE("linear problems are rejected") {
    const Mesh mesh = Mesh::square(kUnit, 1, 1);
    CHECK_THROWS_AS((void)picard_burgers_2d(mesh, scheme(4, 8), TimeDiscretization(2, 0.25), problem1()),
                    InvalidParameter);
}

} // TEST_SUITE

TEST_SUITE("error_report") {

TEST_CASE("a field compared against itself has zero error") {
    const ProblemSpec five = constant_linear(5.0, 0.25);
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const TimeDiscretization time(3, 0.25);
    std::vector<TransformTable2D> tables(4, TransformTable2D(2, 3));
    for (auto& t : tables)
        for (int n = 0; n < 3; ++n) t.set(n, 0, 0, 5.0);
    const Solution solution(mesh, time, five, tables);
    const auto a = build_system_2d(mesh, scheme(2, 4), time, five);
    const auto r = error_report(solution, a.system, 5, 7);
    CHECK(r.e_inf <= 4 * std::numeric_limits<double>::epsilon() * 5.0);
    CHECK(r.samples.size() == static_cast<std::size_t>(4 * 36 * (4 + 7)));
    CHECK(r.dof_label == "2x2 (20)");
    CHECK(r.ratio == doctest::Approx(static_cast<double>(a.system.rows()) / a.system.cols()));
}

TEST_CASE("maximum errors are the maxima over the recorded samples") {
    const ProblemSpec p1 = problem1(0.25);
    const Mesh mesh = Mesh::square(kUnit, 2, 2);
    const TimeDiscretization time(5, 0.25);
    const auto a = build_system_2d(mesh, scheme(6, 8), time, p1);
    const auto ls = solve_least_squares(a.system);
    const Solution solution(mesh, time, p1, element_tables(a, ls.solution));
    const auto r = error_report(solution, a.system, 4);
    double all = 0.0, final_time = 0.0;
    const std::size_t block = static_cast<std::size_t>(time.order() + 1 + r.time_samples);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const ErrorSample& s = r.samples[i];
        all = std::max(all, s.abs_error());
        if (i % block == static_cast<std::size_t>(time.order())) {
            CHECK(s.time == time.final_time());
            final_time = std::max(final_time, s.abs_error());
        }
        CHECK(s.value == doctest::Approx(solution.value(s.point, s.time)).epsilon(1e-10));
    }
    CHECK(r.e_inf == all);
    CHECK(r.e_inf_final == final_time);
    CHECK(r.e_inf > 0.0);
}

} // TEST_SUITE
