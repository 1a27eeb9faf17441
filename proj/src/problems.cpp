#include "ieldtm/problems.hpp"

#include "ieldtm/error.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace ieldtm {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// Sparse polynomial in (x, y, z) used by the manufactured problems.
struct Polynomial {
    std::map<MultiIndex, double> terms;

    [[nodiscard]] double operator()(const Point& p) const {
        double v = 0.0;
        for (const auto& [e, c] : terms)
            v += c * std::pow(p[0], e[0]) * std::pow(p[1], e[1]) * std::pow(p[2], e[2]);
        return v;
    }

    // Coefficient of X^a Y^b Z^c in the expansion about p.
    [[nodiscard]] double taylor(const Point& p, const MultiIndex& a) const {
        double v = 0.0;
        for (const auto& [e, c] : terms) {
            double term = c;
            for (int d = 0; d < 3; ++d) {
                if (a[d] > e[d]) {
                    term = 0.0;
                    break;
                }
                term *= binomial(e[d], a[d]) * std::pow(p[d], e[d] - a[d]);
            }
            v += term;
        }
        return v;
    }
};

// Quadratic part shared by the manufactured problems, written in travelling
// coordinates s_d = x_d - V_d t.
Polynomial manufactured_polynomial(int dimension) {
    Polynomial poly;
    poly.terms[{0, 0, 0}] = 1.0;
    poly.terms[{1, 0, 0}] = 0.5;
    poly.terms[{0, 1, 0}] = -0.3;
    poly.terms[{1, 1, 0}] = 1.0;
    poly.terms[{2, 0, 0}] = 1.0;
    poly.terms[{0, 2, 0}] = 1.0;
    if (dimension == 3) {
        poly.terms[{0, 0, 1}] = 0.25;
        poly.terms[{0, 0, 2}] = 1.0;
        poly.terms[{1, 1, 1}] = 1.0;
    }
    return poly;
}

Point gradient_of(const Polynomial& poly, const Point& p) {
    Point g{0.0, 0.0, 0.0};
    for (int d = 0; d < 3; ++d) {
        MultiIndex a{0, 0, 0};
        a[d] = 1;
        g[d] = poly.taylor(p, a);
    }
    return g;
}

} // namespace

std::vector<double> sine_taylor(double w, double x, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double scale = 1.0;
    for (int k = 0; k <= order; ++k) {
        c[k] = scale * std::sin(w * x + k * kPi / 2.0);
        scale *= w / (k + 1);
    }
    return c;
}

std::vector<double> gaussian_taylor(double a, double x0, double x, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    const double s = x - x0;
    c[0] = std::exp(-a * s * s);
    if (order >= 1) c[1] = -2.0 * a * s * c[0];
    for (int k = 1; k < order; ++k) c[k + 1] = -2.0 * a * (s * c[k] + c[k - 1]) / (k + 1);
    return c;
}

std::vector<double> logistic_taylor(double z, int order) {
    // 1/(1 + e^z e^h) expanded in h by series division; for z > 0 use the
    // mirrored form 1 - 1/(1 + e^{-z} e^{-h}) so the exponential stays bounded.
    const bool mirrored = z > 0.0;
    const double base = std::exp(mirrored ? -z : z);
    std::vector<double> e(static_cast<std::size_t>(order) + 1);
    double f = 1.0;
    for (int m = 0; m <= order; ++m) {
        e[m] = base / f;
        f *= m + 1;
    }
    std::vector<double> s(static_cast<std::size_t>(order) + 1, 0.0);
    s[0] = 1.0 / (1.0 + e[0]);
    for (int m = 1; m <= order; ++m) {
        double acc = 0.0;
        for (int j = 1; j <= m; ++j) acc += e[j] * s[m - j];
        s[m] = -acc / (1.0 + e[0]);
    }
    if (!mirrored) return s;
    std::vector<double> out(s.size());
    out[0] = 1.0 - s[0];
    for (int m = 1; m <= order; ++m) out[m] = (m % 2 == 0 ? -1.0 : 1.0) * s[m];
    return out;
}

double ProblemSpec::initial_partial(const Point& p, const MultiIndex& alpha) const {
    return initial_coefficient(p, alpha) * factorial(alpha[0]) * factorial(alpha[1]) *
           factorial(alpha[2]);
}

BoundaryDatum ProblemSpec::boundary(Face face, const Point& p, double t) const {
    BoundaryDatum datum;
    datum.value = exact(p, t);
    const Point g = exact_gradient(p, t);
    int normal = 0;
    switch (face) {
    case Face::XMin:
    case Face::XMax: normal = 0; break;
    case Face::YMin:
    case Face::YMax: normal = 1; break;
    case Face::ZMin:
    case Face::ZMax: normal = 2; break;
    }
    for (int d = 0; d < dimension; ++d)
        if (d != normal) datum.tangential.push_back(g[d]);
    return datum;
}

ProblemSpec problem1(double final_time) {
    ProblemSpec spec;
    spec.name = "problem1";
    spec.dimension = 2;
    spec.velocity = {0.0, 0.0, 0.0};
    spec.diffusion = {1.0, 1.0, 1.0};
    spec.bounds = {0.0, 1.0, 0.0, 1.0, 0.0, 0.0};
    spec.final_time = final_time;
    spec.exact = [](const Point& p, double t) {
        return std::exp(-2.0 * kPi * kPi * t) * std::sin(kPi * p[0]) * std::sin(kPi * p[1]);
    };
    spec.exact_gradient = [](const Point& p, double t) {
        const double decay = std::exp(-2.0 * kPi * kPi * t);
        return Point{decay * kPi * std::cos(kPi * p[0]) * std::sin(kPi * p[1]),
                     decay * kPi * std::sin(kPi * p[0]) * std::cos(kPi * p[1]), 0.0};
    };
    spec.initial_coefficient = [](const Point& p, const MultiIndex& a) {
        if (a[2] != 0) return 0.0;
        return sine_taylor(kPi, p[0], a[0])[a[0]] * sine_taylor(kPi, p[1], a[1])[a[1]];
    };
    return spec;
}

ProblemSpec problem2(double diffusion_x, double diffusion_y, double x_final, double y_final,
                     double final_time) {
    IELDTM_REQUIRE(diffusion_x > 0.0 && diffusion_y > 0.0, InvalidParameter,
                   "problem2 needs positive diffusion coefficients");
    IELDTM_REQUIRE(x_final > 0.0 && y_final > 0.0, InvalidParameter,
                   "problem2 needs a positive domain extent");
    ProblemSpec spec;
    spec.name = "problem2";
    spec.dimension = 2;
    spec.velocity = {1.0, 1.0, 0.0};
    spec.diffusion = {diffusion_x, diffusion_y, 1.0};
    spec.bounds = {0.0, x_final, 0.0, y_final, 0.0, 0.0};
    spec.final_time = final_time;
    const double dx = diffusion_x;
    const double dy = diffusion_y;
    spec.exact = [dx, dy](const Point& p, double t) {
        const double w = 4.0 * t + 1.0;
        const double sx = p[0] - t - 0.5;
        const double sy = p[1] - t - 0.5;
        return std::exp(-sx * sx / (dx * w) - sy * sy / (dy * w)) / w;
    };
    spec.exact_gradient = [dx, dy](const Point& p, double t) {
        const double w = 4.0 * t + 1.0;
        const double sx = p[0] - t - 0.5;
        const double sy = p[1] - t - 0.5;
        const double u = std::exp(-sx * sx / (dx * w) - sy * sy / (dy * w)) / w;
        return Point{-2.0 * sx / (dx * w) * u, -2.0 * sy / (dy * w) * u, 0.0};
    };
    spec.initial_coefficient = [dx, dy](const Point& p, const MultiIndex& a) {
        if (a[2] != 0) return 0.0;
        return gaussian_taylor(1.0 / dx, 0.5, p[0], a[0])[a[0]] *
               gaussian_taylor(1.0 / dy, 0.5, p[1], a[1])[a[1]];
    };
    return spec;
}

ProblemSpec problem3(double scale_d, double final_time, std::array<double, 4> bounds) {
    IELDTM_REQUIRE(scale_d > 0.0, InvalidParameter, "problem3 needs D > 0");
    ProblemSpec spec;
    spec.name = "problem3";
    spec.dimension = 2;
    spec.equation = Equation::Burgers;
    spec.velocity = {0.0, 0.0, 0.0};
    spec.diffusion = {0.5 * scale_d, 0.5 * scale_d, 0.5 * scale_d};
    spec.bounds = {bounds[0], bounds[1], bounds[2], bounds[3], 0.0, 0.0};
    spec.final_time = final_time;
    const double d = scale_d;
    spec.exact = [d](const Point& p, double t) {
        return 1.0 / (1.0 + std::exp((p[0] + p[1] - t) / d));
    };
    spec.exact_gradient = [d](const Point& p, double t) {
        const double u = 1.0 / (1.0 + std::exp((p[0] + p[1] - t) / d));
        const double g = -u * (1.0 - u) / d;
        return Point{g, g, 0.0};
    };
    spec.initial_coefficient = [d](const Point& p, const MultiIndex& a) {
        if (a[2] != 0) return 0.0;
        const int m = a[0] + a[1];
        const auto s = logistic_taylor((p[0] + p[1]) / d, m);
        // d^m/dx^k dy^p g = D^-m sigma^(m) = D^-m m! s_m
        return s[m] * factorial(m) / (factorial(a[0]) * factorial(a[1]) * std::pow(d, m));
    };
    return spec;
}

ProblemSpec problem4(double final_time) {
    ProblemSpec spec;
    spec.name = "problem4";
    spec.dimension = 3;
    spec.velocity = {1.0, 1.0, 1.0};
    spec.diffusion = {1.0, 1.0, 1.0};
    spec.bounds = {0.0, 1.0, 0.0, 1.0, 0.0, 1.0};
    spec.final_time = final_time;
    spec.exact = [](const Point& p, double t) {
        const double w = 4.0 * t + 1.0;
        double q = 0.0;
        for (double x : p) q += (x - t - 0.5) * (x - t - 0.5);
        return std::exp(-q / w) / std::pow(w, 1.5);
    };
    spec.exact_gradient = [](const Point& p, double t) {
        const double w = 4.0 * t + 1.0;
        double q = 0.0;
        for (double x : p) q += (x - t - 0.5) * (x - t - 0.5);
        const double u = std::exp(-q / w) / std::pow(w, 1.5);
        Point g{};
        for (int d = 0; d < 3; ++d) g[d] = -2.0 * (p[d] - t - 0.5) / w * u;
        return g;
    };
    spec.initial_coefficient = [](const Point& p, const MultiIndex& a) {
        double v = 1.0;
        for (int d = 0; d < 3; ++d) v *= gaussian_taylor(1.0, 0.5, p[d], a[d])[a[d]];
        return v;
    };
    return spec;
}

namespace {

ProblemSpec travelling_polynomial(const std::string& name, int dimension, const Polynomial& poly,
                                  std::array<double, 3> velocity, std::array<double, 3> diffusion,
                                  double final_time) {
    double trace = 0.0;
    for (int d = 0; d < dimension; ++d) {
        MultiIndex a{0, 0, 0};
        a[d] = 2;
        trace += 2.0 * diffusion[d] * poly.taylor({0.0, 0.0, 0.0}, a);
    }
    ProblemSpec spec;
    spec.name = name;
    spec.dimension = dimension;
    spec.velocity = velocity;
    spec.diffusion = diffusion;
    spec.bounds = {0.0, 1.0, 0.0, 1.0, 0.0, dimension == 3 ? 1.0 : 0.0};
    spec.final_time = final_time;
    auto shift = [velocity](const Point& p, double t) {
        return Point{p[0] - velocity[0] * t, p[1] - velocity[1] * t, p[2] - velocity[2] * t};
    };
    // u = q(x - V t) + trace * t; q has no cubic pure powers, so sum_d D_d q_dd
    // is the constant `trace` and the transport part cancels.
    spec.exact = [poly, shift, trace](const Point& p, double t) {
        return poly(shift(p, t)) + trace * t;
    };
    spec.exact_gradient = [poly, shift](const Point& p, double t) {
        return gradient_of(poly, shift(p, t));
    };
    spec.initial_coefficient = [poly](const Point& p, const MultiIndex& a) {
        return poly.taylor(p, a);
    };
    return spec;
}

} // namespace

ProblemSpec manufactured2d(std::array<double, 2> velocity, std::array<double, 2> diffusion,
                           double final_time) {
    return travelling_polynomial("manufactured2d", 2, manufactured_polynomial(2),
                                 {velocity[0], velocity[1], 0.0},
                                 {diffusion[0], diffusion[1], 1.0}, final_time);
}

ProblemSpec manufactured3d(std::array<double, 3> velocity, std::array<double, 3> diffusion,
                           double final_time) {
    return travelling_polynomial("manufactured3d", 3, manufactured_polynomial(3), velocity,
                                 diffusion, final_time);
}

ProblemSpec trilinear3d(double final_time) {
    Polynomial poly;
    poly.terms[{1, 1, 1}] = 1.0;
    return travelling_polynomial("trilinear3d", 3, poly, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0},
                                 final_time);
}

ProblemSpec constant_burgers(double value, double viscosity, double final_time) {
    ProblemSpec spec;
    spec.name = "constant_burgers";
    spec.dimension = 2;
    spec.equation = Equation::Burgers;
    spec.diffusion = {viscosity, viscosity, viscosity};
    spec.bounds = {0.0, 1.0, 0.0, 1.0, 0.0, 0.0};
    spec.final_time = final_time;
    spec.exact = [value](const Point&, double) { return value; };
    spec.exact_gradient = [](const Point&, double) { return Point{0.0, 0.0, 0.0}; };
    spec.initial_coefficient = [value](const Point&, const MultiIndex& a) {
        return (a[0] == 0 && a[1] == 0 && a[2] == 0) ? value : 0.0;
    };
    return spec;
}

const ReferenceTable& reference_table1() {
    static const ReferenceTable table{
        "problem1 t_f=0.25 N=15 S=14 K=10",
        "fdm_ref_a",
        "fdm_ref_b",
        {
            {"11x11 (121)", 1.36e-05, 5.67e-06, 2, 84, 4.14e-08, 6.91e-06, 6.91e-06},
            {"21x21 (441)", 8.55e-07, 3.36e-07, 3, 189, 1.69e-09, 1.68e-06, 1.68e-06},
            {"41x41 (1681)", 5.34e-08, 2.07e-08, 4, 336, 8.70e-11, 3.63e-08, 3.63e-08},
            {"81x81 (6561)", 3.34e-09, 1.29e-09, 5, 525, 9.99e-12, 1.81e-09, 1.81e-09},
        }};
    return table;
}

const ReferenceTable& reference_table2() {
    constexpr double absent = std::numeric_limits<double>::quiet_NaN();
    static const ReferenceTable table{
        "problem3 t_f=0.25 N=15 S=16 D=1 K=10",
        "chscm_ref",
        "fem_ref",
        {
            {"5x5 (25)", 8.94e-08, 4.65e-08, 1, 21, 5.84e-10, 5.84e-10, 5.84e-10},
            {"10x10 (100)", 7.45e-07, 5.90e-09, 2, 84, 1.12e-14, 1.11e-12, 6.46e-13},
            {"15x15 (225)", absent, 2.18e-09, 3, 189, 5.55e-17, 4.18e-14, 4.08e-14},
            {"30x30 (900)", absent, 1.01e-09, 4, 336, 1.66e-16, 3.83e-15, 4.21e-15},
        }};
    return table;
}

} // namespace ieldtm
