#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "levyx/model.hpp"
#include "levyx/presets.hpp"
#include "levyx/symbol.hpp"

using namespace levyx;

namespace {

constexpr cplx I{0.0, 1.0};
const double kPi = std::acos(-1.0);

double gauss_pdf(double z, double m, double s) {
    return std::exp(-0.5 * (z - m) * (z - m) / (s * s)) / (s * std::sqrt(2.0 * kPi));
}

// Independent quadrature of int nu(dz) g(z) with a Gaussian jump law.
double gauss_moment(double lambda, double m, double s, const std::function<double(double)>& g) {
    auto f = [&](double z) { return lambda * gauss_pdf(z, m, s) * g(z); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, m - 20 * s, m + 20 * s, 15, 1e-14);
}

}  // namespace

TEST(LevyMeasure, GaussianCompensatorMatchesQuadrature) {
    for (auto [lam, m, s] : {std::tuple{0.3, -0.1, 0.4}, {1.0, 0.2, 0.1}, {0.05, -0.9, 1.0}}) {
        const auto nu = LevyMeasure::gaussian(lam, m, s);
        const double oracle = gauss_moment(lam, m, s, [](double z) { return std::exp(z) - 1.0 - z; });
        EXPECT_NEAR(nu.compensator(), oracle, 1e-13);
    }
}

TEST(LevyMeasure, GaussianChiMatchesQuadrature) {
    const auto nu = LevyMeasure::gaussian(0.3, -0.1, 0.4);
    for (cplx xi : {cplx(1.0, 0.0), cplx(-2.5, -0.5), cplx(0.7, 1.2)}) {
        auto re = [&](double z) { return (std::exp(I * xi * z) - 1.0 - I * xi * z).real(); };
        auto im = [&](double z) { return (std::exp(I * xi * z) - 1.0 - I * xi * z).imag(); };
        const cplx oracle(gauss_moment(0.3, -0.1, 0.4, re), gauss_moment(0.3, -0.1, 0.4, im));
        EXPECT_LT(std::abs(nu.chi(xi) - oracle), 1e-12);
        EXPECT_LT(std::abs(nu.chi_by_quadrature(xi) - oracle), 1e-10);
    }
}

TEST(LevyMeasure, VarianceGammaChiMatchesLogForm) {
    const double theta = -0.3, rho = 0.3, kappa = 0.15;
    const auto nu = LevyMeasure::variance_gamma(theta, rho, kappa);
    for (cplx xi : {cplx(0.5, 0.0), cplx(3.0, -0.4), cplx(-1.0, 0.8)}) {
        const cplx psi = -std::log(1.0 - I * theta * kappa * xi + 0.5 * rho * rho * kappa * xi * xi) / kappa;
        EXPECT_LT(std::abs(nu.chi(xi) + I * xi * theta - psi), 1e-12) << xi;
    }
}

TEST(LevyMeasure, VarianceGammaDensityIntegratesToChi) {
    const auto nu = LevyMeasure::variance_gamma(-0.3, 0.3, 0.15);
    const cplx xi(1.3, -0.2);
    boost::math::quadrature::tanh_sinh<double> ts;
    auto part = [&](bool real, double sgn) {
        return ts.integrate([&](double r) {
            const double z = sgn * r;
            const cplx g = std::exp(I * xi * z) - 1.0 - I * xi * z;
            return nu.density(z) * (real ? g.real() : g.imag());
        }, 0.0, 400.0);
    };
    const cplx oracle(part(true, 1.0) + part(true, -1.0), part(false, 1.0) + part(false, -1.0));
    EXPECT_LT(std::abs(nu.chi(xi) - oracle), 1e-9);
}

TEST(LevyMeasure, DecayRatesAreRootsOfTheQuadratic) {
    double lp = 0, lm = 0;
    vg_decay_rates(-0.3, 0.3, 0.15, lp, lm);
    // 1 - theta kappa u - rho^2 kappa u^2 / 2 vanishes at u = lp and u = -lm.
    auto q = [](double u) { return 1.0 + 0.3 * 0.15 * u - 0.5 * 0.09 * 0.15 * u * u; };
    EXPECT_NEAR(q(lp), 0.0, 1e-12);
    EXPECT_NEAR(q(-lm), 0.0, 1e-12);
    EXPECT_GT(lp, 1.0);
}

TEST(LevyMeasure, RejectsOutsideStrip) {
    const auto nu = LevyMeasure::variance_gamma(-0.3, 0.3, 0.15);
    double lp = 0, lm = 0;
    vg_decay_rates(-0.3, 0.3, 0.15, lp, lm);
    EXPECT_THROW(nu.chi(cplx(0.0, lm + 0.5)), Error);
    EXPECT_THROW(LevyMeasure::gaussian(-1.0, 0.0, 1.0), Error);
}

TEST(Model, DriftFromCoefficients) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::constant(0.05),
                CoefficientField::constant(1.0), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    const double comp = gauss_moment(0.3, -0.1, 0.4, [](double z) { return std::exp(z) - 1.0 - z; });
    EXPECT_NEAR(drift_from_coefficients(m, 0.0, 0.0), 0.05 - 0.02 - comp, 1e-13);

    ModelSpec pure(CoefficientField::constant(0.0), CoefficientField::constant(0.05), {}, LevyMeasure());
    EXPECT_DOUBLE_EQ(drift_from_coefficients(pure, 1.0, 2.0), 0.05);
}

TEST(Model, SymbolAtZeroIsMinusKilling) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::exponential(0.05, -1.0),
                CoefficientField::constant(1.0), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    for (double x : {-1.0, 0.0, 0.5}) {
        EXPECT_LT(std::abs(full_symbol(m, 0.0, x, 0.0) + 0.05 * std::exp(-x)), 1e-14);
    }
}

TEST(Model, FullSymbolMatchesGenerator) {
    const auto m = cev_gauss_model();
    for (cplx xi : {cplx(0.3, 0.0), cplx(-4.0, -1.5), cplx(2.0, 0.4)}) {
        for (double x : {-1.0, 0.0, 1.2}) {
            EXPECT_LT(std::abs(full_symbol(m, 0.0, x, xi) - generator_symbol(m, 0.0, x, xi)), 1e-12);
        }
    }
}

TEST(Model, HermitianSymmetryOnRealAxis) {
    const auto m = cev_vg_model();
    for (double r : {0.1, 1.0, 7.5}) {
        const cplx a = full_symbol(m, 0.0, 0.3, r);
        const cplx b = full_symbol(m, 0.0, 0.3, -r);
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-14);
    }
}

TEST(Model, MartingaleIdentityOnRandomDraws) {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        CevGaussParams p;
        p.delta = 0.6 * u(g);
        p.beta = u(g);
        p.lambda = u(g);
        p.m = -u(g);
        p.eta = 0.05 + 0.95 * u(g);
        const auto m = cev_gauss_model(p);
        const double x = -2.0 + 4.0 * u(g);
        EXPECT_LT(std::abs(full_symbol(m, 0.0, x, cplx(0.0, -1.0))), 1e-12);
    }
}

TEST(Model, RejectsNegativeVariance) {
    EXPECT_THROW(ModelSpec(CoefficientField::constant(-0.01), {}, {}, LevyMeasure()), Error);
    EXPECT_THROW(ModelSpec(CoefficientField::constant(0.01), CoefficientField::constant(-1.0), {}, LevyMeasure()),
                 Error);
}

TEST(Model, PresetsAreWellFormed) {
    for (const auto& name : preset_names()) {
        const auto p = make_preset(name);
        EXPECT_TRUE(p.model.time_homogeneous()) << name;
        EXPECT_LT(std::abs(full_symbol(p.model, 0.0, p.x0, cplx(0.0, -1.0))), 1e-12) << name;
    }
    EXPECT_THROW(make_preset("nope"), Error);
}

TEST(Model, ProportionalFormIsDetected) {
    ModelSpec m(CoefficientField::from_expression("0.02*exp(-x)"), CoefficientField::from_expression("0.01*exp(-x)"),
                CoefficientField::from_expression("2*exp(-x)"), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    const auto form = m.proportional_form();
    ASSERT_TRUE(form.has_value());
    for (double x : {-1.0, 0.5}) {
        const double f = form->f(0.0, x);
        EXPECT_NEAR(f * form->A(0.0, 0.0), 0.02 * std::exp(-x), 1e-12);
        EXPECT_NEAR(f * form->C(0.0, 0.0), 2.0 * std::exp(-x), 1e-12);
    }
    ModelSpec mixed(CoefficientField::from_expression("0.02*exp(-x)"), {},
                    CoefficientField::from_expression("1 + x^2"), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    EXPECT_FALSE(mixed.proportional_form().has_value());
}
