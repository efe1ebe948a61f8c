#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "levyx/basis.hpp"
#include "levyx/presets.hpp"

using namespace levyx;

namespace {

const double kPi = std::acos(-1.0);

struct RandomPoly {
    std::vector<double> c;
    std::string text;
    double operator()(double x) const {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
};

// Positive on [-3, 3] so it is admissible as a variance coefficient.
RandomPoly random_poly(int degree, std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RandomPoly p;
    p.c.resize(static_cast<std::size_t>(degree) + 1);
    for (int i = 1; i <= degree; ++i) p.c[static_cast<std::size_t>(i)] = u(g) / std::pow(3.0, i);
    p.c[0] = degree + 1.0;
    char buf[64];
    for (int i = 0; i <= degree; ++i) {
        std::snprintf(buf, sizeof buf, "%s(%.17g)*x^%d", i ? " + " : "", p.c[static_cast<std::size_t>(i)], i);
        p.text += buf;
    }
    return p;
}

ModelSpec variance_only(const std::string& expr) {
    return ModelSpec(CoefficientField::from_expression(expr), {}, {}, LevyMeasure());
}

}  // namespace

TEST(Taylor, ConstantCoefficientsHaveNoHigherTerms) {
    const auto m = make_preset("merton").model;
    const auto e = taylor_expand(m, 0.3, 4);
    const auto c = e.coefficients(0.0);
    EXPECT_DOUBLE_EQ(c[0].a, 0.02);
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(c[static_cast<std::size_t>(n)].a, 0.0);
        EXPECT_EQ(c[static_cast<std::size_t>(n)].jump, 0.0);
        EXPECT_EQ(c[static_cast<std::size_t>(n)].gamma, 0.0);
    }
}

TEST(Taylor, CevCoefficientsAgreeWithFiniteDifferences) {
    const auto m = cev_gauss_model();
    const auto c = taylor_expand(m, 0.0, 3).coefficients(0.0);
    EXPECT_NEAR(c[0].a, 0.02, 1e-15);
    EXPECT_NEAR(c[1].a, -0.03, 1e-15);
    const double h = 1e-6;
    const double fd = (m.a()(0.0, h) - m.a()(0.0, -h)) / (2.0 * h);
    EXPECT_NEAR(c[1].a, fd, 1e-9);
    EXPECT_NEAR(c[1].jump, -1.5, 1e-14);
    EXPECT_NEAR(c[2].jump, 1.125, 1e-14);
}

TEST(Taylor, KillingConstantStaysAtOrderZero) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::constant(0.07), {}, LevyMeasure());
    const auto c = taylor_expand(m, 0.0, 3).coefficients(0.0);
    EXPECT_DOUBLE_EQ(c[0].gamma, 0.07);
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(c[static_cast<std::size_t>(n)].gamma, 0.0);
}

TEST(Taylor, BasisVanishesAtCenter) {
    const auto e = taylor_expand(cev_gauss_model(), 0.4, 4);
    EXPECT_DOUBLE_EQ(e.basis[0](1.7), 1.0);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(e.basis[static_cast<std::size_t>(n)](0.4), 0.0, 1e-15);
}

TEST(Taylor, ReproducesPolynomialsUpToOrder) {
    std::mt19937_64 g(11);
    for (int N = 1; N <= 6; ++N) {
        const auto p = random_poly(N, g);
        const auto e = taylor_expand(variance_only(p.text), 0.25, N);
        for (double x = -2.0; x <= 2.0; x += 0.125) EXPECT_NEAR(e.reconstruct(0.0, x, N).a, p(x), 1e-12) << N;
    }
}

TEST(Taylor, FiniteDifferenceFallback) {
    ModelSpec m(CoefficientField::from_function([](double, double x) { return 0.02 * std::exp(-1.5 * x); }, false),
                {}, {}, LevyMeasure());
    EXPECT_THROW(taylor_expand(m, 0.0, 2), Error);
    const auto c = taylor_expand(m, 0.0, 2, true).coefficients(0.0);
    EXPECT_NEAR(c[1].a, -0.03, 1e-7);
    EXPECT_NEAR(c[2].a, 0.0225, 1e-5);
}

TEST(TwoPoint, SquareExample) {
    ModelSpec m = variance_only("x^2");
    ProportionalForm form{CoefficientField::from_expression("x^2"), CoefficientField::constant(1.0), {}, {}};
    m.declare_proportional(form);
    const auto e = two_point_taylor_expand(m, -1.0, 1.0, 0.0, 2);
    ASSERT_EQ(e.basis.size(), 3u);
    for (double x = -3.0; x <= 3.0; x += 0.25) {
        EXPECT_NEAR(e.basis[1](x), 1.0, 1e-15);
        EXPECT_NEAR(e.basis[2](x), x * x - 1.0, 1e-14);
        EXPECT_NEAR(e.reconstruct(0.0, x, 2).a, x * x, 1e-14);
    }
    EXPECT_EQ(e.basis[2].degree(), 2);  // the cubic term cancels for an even f
}

TEST(TwoPoint, CoefficientPairByHand) {
    // f = x^2: f(-1) = f(1) = 1, so c_0(x1, x2) = 1/2 and c_0(x2, x1) = -1/2.
    const std::vector<double> d1{1.0, -2.0}, d2{1.0, 2.0};
    EXPECT_DOUBLE_EQ(two_point_coefficient(0, -1.0, 1.0, d1, d2), 0.5);
    EXPECT_DOUBLE_EQ(two_point_coefficient(0, 1.0, -1.0, d2, d1), -0.5);
}

TEST(TwoPoint, AffineTerminatesAtFirstOrder) {
    ModelSpec m = variance_only("2 + 0.3*x");
    const auto e = two_point_taylor_expand(m, -0.5, 0.5, 0.0, 3);
    for (double x = -6.0; x <= 6.0; x += 0.5) EXPECT_NEAR(e.reconstruct(0.0, x, 1).a, 2.0 + 0.3 * x, 1e-13);
    const auto c = e.coefficients(0.0);
    // higher basis functions vanish identically
    for (double x : {-2.0, 0.3, 1.9}) {
        EXPECT_NEAR(e.basis[2](x), 0.0, 1e-12);
        EXPECT_NEAR(e.basis[3](x), 0.0, 1e-12);
    }
    (void)c;
}

TEST(TwoPoint, ReproducesPolynomialsOfDegreeTwoNMinusOne) {
    std::mt19937_64 g(5);
    for (int N = 1; N <= 5; ++N) {
        const auto p = random_poly(2 * N - 1, g);
        for (double delta : {0.5, 0.8}) {
            const auto e = two_point_taylor_expand(variance_only(p.text), -delta, delta, p(0.0), N);
            // grid spans one half width beyond each expansion point
            for (double x = -2.0 * delta; x <= 2.0 * delta + 1e-12; x += delta / 8.0)
                EXPECT_NEAR(e.reconstruct(0.0, x, N).a, p(x), 1e-12) << "N=" << N << " x=" << x;
            EXPECT_EQ(e.basis[static_cast<std::size_t>(N)].degree(), 2 * N - 1);
        }
    }
}

TEST(TwoPoint, CevProfileMatchesAtBothPoints) {
    const auto m = cev_gauss_model();
    const auto e = two_point_taylor_expand(m, -0.5, 0.5, 1.0, 2);
    auto f = [](double x) { return std::exp(-1.5 * x); };
    EXPECT_NEAR(e.reconstruct(0.0, -0.5, 2).jump, f(-0.5), 1e-13);
    EXPECT_NEAR(e.reconstruct(0.0, 0.5, 2).jump, f(0.5), 1e-13);
    const double err2 = std::abs(e.reconstruct(0.0, 0.0, 2).jump - 1.0);
    const auto e3 = two_point_taylor_expand(m, -0.5, 0.5, 1.0, 3);
    const double err3 = std::abs(e3.reconstruct(0.0, 0.0, 3).jump - 1.0);
    EXPECT_LT(err2, 0.05);
    EXPECT_LT(err3, err2);
}

TEST(TwoPoint, Rejections) {
    const auto m = cev_gauss_model();
    EXPECT_THROW(two_point_taylor_expand(m, 0.5, 0.5, 1.0, 2), Error);
    ModelSpec mixed(CoefficientField::from_expression("0.02*exp(-x)"), {}, CoefficientField::from_expression("1 + x^2"),
                    LevyMeasure::gaussian(0.3, -0.1, 0.4));
    try {
        two_point_taylor_expand(mixed, -0.5, 0.5, 1.0, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
    }
}

TEST(Hermite, Orthonormality) {
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            const auto hm = hermite_polynomial(m), hn = hermite_polynomial(n);
            auto f = [&](double u) { return hm(u) * hn(u) * std::exp(-u * u); };
            const double ip = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -12.0, 12.0, 10, 1e-15);
            EXPECT_NEAR(ip, m == n ? 1.0 : 0.0, 1e-10) << m << "," << n;
        }
    }
}

TEST(Hermite, ConstantFunction) {
    ModelSpec m(CoefficientField::constant(1.0), {}, {}, LevyMeasure());
    const auto e = hermite_expand(m, 0.0, 4, 32);
    const auto c = e.coefficients(0.0);
    // phi_0 carries pi^{1/4} H_0 = 1
    EXPECT_NEAR(c[0].a, std::pow(kPi, 0.25) * std::pow(kPi, -0.25), 1e-13);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(c[static_cast<std::size_t>(n)].a, 0.0, 1e-13);
    EXPECT_NEAR(e.reconstruct(0.0, 1.3, 4).a, 1.0, 1e-13);
}

TEST(Hermite, ReproducesPolynomialsUpToOrder) {
    std::mt19937_64 g(3);
    for (int N = 1; N <= 6; ++N) {
        const auto p = random_poly(N, g);
        const auto e = hermite_expand(variance_only(p.text), -0.2, N, 64);
        for (double x = -2.0; x <= 2.0; x += 0.25) EXPECT_NEAR(e.reconstruct(0.0, x, N).a, p(x), 1e-11) << N;
    }
}

TEST(Hermite, LocallyWorseThanTaylor) {
    const auto m = cev_gauss_model();
    const auto h = hermite_expand(m, 0.0, 4, 64);
    const auto t = taylor_expand(m, 0.0, 4);
    for (double x : {-0.5, 0.5}) {
        const double truth = std::exp(-1.5 * x);
        EXPECT_GT(std::abs(h.reconstruct(0.0, x, 4).jump - truth), std::abs(t.reconstruct(0.0, x, 4).jump - truth));
    }
}

TEST(Hermite, RejectsLowQuadratureOrder) {
    EXPECT_THROW(hermite_expand(cev_gauss_model(), 0.0, 4, 4), Error);
}

TEST(Basis, DefaultsResolveAgainstSpot) {
    const auto m = cev_gauss_model();
    BasisSpec s;
    s.family = BasisFamily::TwoPoint;
    const auto e = build_expansion(m, s, 2, 0.2);
    EXPECT_DOUBLE_EQ(e.x1, -0.3);
    EXPECT_DOUBLE_EQ(e.x2, 0.7);
    EXPECT_NEAR(e.shift, std::exp(-0.3), 1e-15);
    s.family = BasisFamily::Taylor;
    EXPECT_DOUBLE_EQ(build_expansion(m, s, 2, 0.2).xbar, 0.2);
    EXPECT_THROW(basis_family_from_string("legendre"), Error);
}

TEST(Basis, JetBudgetGrowsWithOrder) {
    const auto e = taylor_expand(cev_gauss_model(), 0.0, 3);
    for (int n = 1; n <= 3; ++n) EXPECT_GT(e.jet_budget(n), e.jet_budget(n - 1));
}
