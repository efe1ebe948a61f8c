#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "levyx/expand.hpp"
#include "levyx/payoff.hpp"
#include "levyx/presets.hpp"

using namespace levyx;

namespace {

constexpr cplx I{0.0, 1.0};

// Derivatives 0..2 of a scalar function of xi.
struct D2 {
    cplx f, d1, d2;
};

// Hand-coded Gaussian-jump symbol phi_n and its xi-derivatives.
D2 phi_n(const FrozenCoeffs& c, const GaussianJumps& g, double comp, cplx xi) {
    const cplx q = I * g.mean - g.stdev * g.stdev * xi;
    const cplx e = std::exp(I * g.mean * xi - 0.5 * g.stdev * g.stdev * xi * xi);
    const cplx chi = g.lambda * (e - 1.0 - I * g.mean * xi);
    const cplx chi1 = g.lambda * (q * e - I * g.mean);
    const cplx chi2 = g.lambda * ((q * q - g.stdev * g.stdev) * e);
    D2 r;
    r.f = c.gamma * (I * xi - 1.0) + c.a * (-xi * xi - I * xi) + c.jump * (chi - I * xi * comp);
    r.d1 = c.gamma * I + c.a * (-2.0 * xi - I) + c.jump * (chi1 - I * comp);
    r.d2 = c.a * -2.0 + c.jump * chi2;
    return r;
}

// First- and second-order terms written out by hand for a Taylor basis
// centred at xb, at time to maturity t.
cplx u1_oracle(const D2& p0, const D2& p1, const D2& h, double xb, double t) {
    return std::exp(t * p0.f) *
           (-t * h.f * xb * p1.f + I * t * p1.f * h.d1 + 0.5 * I * t * t * h.f * p1.f * p0.d1 + I * t * h.f * p1.d1);
}

cplx u2_oracle(const D2& p0, const D2& p1, const D2& p2, const D2& h, double xb, double t) {
    const cplx h0 = h.f, h1 = h.d1, h2 = h.d2;
    const cplx f0 = p0.d1, f0d = p0.d2, f1 = p1.f, f1d = p1.d1, f1dd = p1.d2, f2 = p2.f, f2d = p2.d1, f2dd = p2.d2;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, x2 = xb * xb;
    const cplx s = 0.5 * t2 * h0 * x2 * f1 * f1 + t * h0 * x2 * f2 - I * t2 * xb * f1 * f1 * h1 -
                   2.0 * I * t * xb * f2 * h1 - 0.5 * I * t3 * h0 * xb * f1 * f1 * f0 - I * t2 * h0 * xb * f2 * f0 -
                   0.5 * t3 * f1 * f1 * h1 * f0 - t2 * f2 * h1 * f0 - t4 * h0 * f1 * f1 * f0 * f0 / 8.0 -
                   t3 * h0 * f2 * f0 * f0 / 3.0 - 1.5 * I * t2 * h0 * xb * f1 * f1d - 1.5 * t2 * f1 * h1 * f1d -
                   2.0 / 3.0 * t3 * h0 * f1 * f0 * f1d - 0.5 * t2 * h0 * f1d * f1d - 2.0 * I * t * h0 * xb * f2d -
                   2.0 * t * h1 * f2d - t2 * h0 * f0 * f2d - 0.5 * t2 * f1 * f1 * h2 - t * f2 * h2 -
                   t3 * h0 * f1 * f1 * f0d / 6.0 - 0.5 * t2 * h0 * f2 * f0d - 0.5 * t2 * h0 * f1 * f1dd -
                   t * h0 * f2dd;
    return std::exp(t * p0.f) * s;
}

D2 from_jet(const CJet& j) { return {j.value(), j.derivative_value(1), j.derivative_value(2)}; }

// Entire test transform with closed-form derivatives.
struct GaussHat {
    double c = 0.3;
    cplx operator()(cplx xi) const { return std::exp(-0.5 * xi * xi - I * c * xi); }
    D2 d(cplx xi) const {
        const cplx f = (*this)(xi), g = -xi - I * c;
        return {f, g * f, (g * g - 1.0) * f};
    }
    HatJet jet() const {
        const double cc = c;
        return [cc](cplx xi0, int order) {
            const CJet x = CJet::variable(xi0, order);
            return exp(x * x * cplx(-0.5) - x * (I * cc));
        };
    }
};

struct OracleCase {
    double xbar;
    bool put;
    double contour;
};

double max_rel_error(const OracleCase& oc, int n_points, std::uint64_t seed, int order) {
    const auto model = cev_gauss_model();
    const auto e = taylor_expand(model, oc.xbar, 2);
    const auto c = e.coefficients(0.0);
    const auto& g = model.measure().gaussian_params();
    const double comp = model.measure().compensator();
    const auto put = PayoffTransform::put(-0.1438);
    const GaussHat gh;
    const HatJet hj = oc.put ? put.hat_jet() : gh.jet();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-15.0, 15.0), tau(0.05, 5.0);
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const cplx xi(re(rng), oc.contour);
        const double t = tau(rng);
        const D2 h = oc.put ? from_jet(put.jet(xi, 2)) : gh.d(xi);
        const D2 p0 = phi_n(c[0], g, comp, xi), p1 = phi_n(c[1], g, comp, xi), p2 = phi_n(c[2], g, comp, xi);
        const auto terms = build_terms_homogeneous(e, hj, t, 2, xi);
        const cplx oracle = order == 1 ? u1_oracle(p0, p1, h, oc.xbar, t) : u2_oracle(p0, p1, p2, h, oc.xbar, t);
        const cplx got = terms[static_cast<std::size_t>(order)];
        const double scale = std::abs(oracle);
        if (scale < 1e-250) continue;
        worst = std::max(worst, std::abs(got - oracle) / scale);
    }
    return worst;
}

}  // namespace

class ExplicitTerms : public ::testing::TestWithParam<OracleCase> {};

TEST_P(ExplicitTerms, FirstOrderMatchesHandCodedFormula) {
    EXPECT_LT(max_rel_error(GetParam(), 50, 17, 1), 1e-10);
}

TEST_P(ExplicitTerms, SecondOrderMatchesHandCodedFormula) {
    EXPECT_LT(max_rel_error(GetParam(), 50, 23, 2), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Contours, ExplicitTerms,
                         ::testing::Values(OracleCase{0.0, false, 0.0}, OracleCase{0.0, false, -0.75},
                                           OracleCase{0.0, true, 0.5}, OracleCase{0.0, true, 1.5},
                                           OracleCase{0.35, false, 0.0}, OracleCase{-0.4, true, 0.5}));

TEST(Homogeneous, ConstantCoefficientsGiveZeroCorrections) {
    const auto model = make_preset("merton").model;
    const auto e = taylor_expand(model, 0.0, 3);
    const auto put = PayoffTransform::put(0.1).hat_jet();
    for (double re : {-7.0, -0.3, 0.0, 2.0, 11.0}) {
        const auto terms = build_terms_homogeneous(e, put, 1.5, 3, cplx(re, 0.5));
        for (int n = 1; n <= 3; ++n) EXPECT_LE(std::abs(terms[static_cast<std::size_t>(n)]), 1e-12);
    }
}

TEST(Homogeneous, ZerothOrderIsExponentialOfSymbol) {
    const auto model = cev_gauss_model();
    const auto e = taylor_expand(model, 0.0, 3);
    const GaussHat gh;
    const cplx xi(1.7, -0.3);
    const auto terms = build_terms_homogeneous(e, gh.jet(), 0.8, 3, xi);
    const cplx phi0 = full_symbol(model, 0.0, 0.0, xi);
    EXPECT_LT(std::abs(terms[0] - std::exp(0.8 * phi0) * gh(xi)), 1e-14);
}

TEST(Homogeneous, RejectsNonPositiveMaturity) {
    const auto e = taylor_expand(cev_gauss_model(), 0.0, 3);
    const GaussHat gh;
    EXPECT_THROW(build_terms_homogeneous(e, gh.jet(), 0.0, 3, cplx(0.9, 0.0)), Error);
}

TEST(Homogeneous, RejectsOrderBeyondJetBudget) {
    const auto e = two_point_taylor_expand(cev_gauss_model(), -0.5, 0.5, 1.0, 6);
    EXPECT_EQ(e.jet_budget(6), 11);
    EXPECT_NO_THROW(HomogeneousEngine(e, 6));
    try {
        HomogeneousEngine engine(e, 6, 2);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Budget);
    }
}

TEST(Inhomogeneous, AgreesWithHomogeneousOnTimeHomogeneousModels) {
    for (const char* name : {"cev-gauss", "cev-vg"}) {
        const auto model = make_preset(name).model;
        const auto e = taylor_expand(model, 0.0, 3);
        const auto put = PayoffTransform::put(-0.2).hat_jet();
        for (double re : {-4.0, 0.0, 0.6, 9.0}) {
            const cplx xi(re, 0.5);
            const auto hom = build_terms_homogeneous(e, put, 1.0, 3, xi);
            const auto inh = build_terms_inhomogeneous(e, put, 0.0, 1.0, 3, xi);
            for (int n = 0; n <= 3; ++n) {
                const auto k = static_cast<std::size_t>(n);
                EXPECT_LT(std::abs(hom[k] - inh[k]), 1e-9 * std::max(1.0, std::abs(hom[k]))) << name << " n=" << n;
            }
        }
    }
}

TEST(Inhomogeneous, ZerothOrderIntegratesTheSymbolInTime) {
    ModelSpec m(CoefficientField::from_expression("0.02*(1 + t)"), CoefficientField::from_expression("0.01*t^2"), {},
                LevyMeasure());
    ASSERT_FALSE(m.time_homogeneous());
    const auto e = taylor_expand(m, 0.0, 1);
    const GaussHat gh;
    const cplx xi(1.2, -0.4);
    const double t = 0.5, T = 2.0;
    const auto v = build_terms_inhomogeneous(e, gh.jet(), t, T, 1, xi);
    // int_t^T a(s) ds and int_t^T gamma(s) ds in closed form
    const double A = 0.02 * ((T - t) + 0.5 * (T * T - t * t));
    const double G = 0.01 * (T * T * T - t * t * t) / 3.0;
    const cplx expo = G * (I * xi - 1.0) + A * (-xi * xi - I * xi);
    EXPECT_LT(std::abs(v[0] - std::exp(expo) * gh(xi)), 1e-12);
    EXPECT_LT(std::abs(v[1]), 1e-14);
}

TEST(Inhomogeneous, TimeDependentCev) {
    ModelSpec m(CoefficientField::from_expression("0.02*(1 + 0.5*t)*exp(-1.5*x)"), {},
                CoefficientField::from_expression("(1 + 0.5*t)*exp(-1.5*x)"), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    const auto e = taylor_expand(m, 0.0, 2);
    const auto put = PayoffTransform::put(0.0).hat_jet();
    const auto v = build_terms_inhomogeneous(e, put, 0.0, 1.0, 2, cplx(0.7, 0.5));
    for (const auto& x : v) EXPECT_TRUE(std::isfinite(x.real()) && std::isfinite(x.imag()));
    EXPECT_GT(std::abs(v[1]), 0.0);
}

TEST(OdeResiduals, HomogeneousPresets) {
    for (const char* name : {"cev-gauss", "cev-vg"}) {
        const auto model = make_preset(name).model;
        const auto e = taylor_expand(model, 0.1, 2);
        const auto put = PayoffTransform::put(-0.1438).hat_jet();
        for (double re = -10.0; re <= 10.0; re += 2.5) {
            for (int n = 0; n <= 2; ++n) {
                const double r = std::abs(ode_residual(e, put, n, 0.3, 1.0, cplx(re, 0.5)));
                EXPECT_LE(r, 1e-5) << name << " n=" << n << " re=" << re;
            }
        }
    }
}

TEST(OdeResiduals, TimeDependentModel) {
    ModelSpec m(CoefficientField::from_expression("0.02*(1 + 0.5*t)*exp(-1.5*x)"), {},
                CoefficientField::from_expression("(1 + 0.5*t)*exp(-1.5*x)"), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    const auto e = taylor_expand(m, 0.0, 2);
    const auto put = PayoffTransform::put(0.0).hat_jet();
    for (double re : {-6.0, -1.0, 0.0, 3.0}) {
        for (int n = 0; n <= 2; ++n)
            EXPECT_LE(std::abs(ode_residual(e, put, n, 0.2, 1.0, cplx(re, 0.5))), 1e-5) << n << " " << re;
    }
}

TEST(TermPolynomial, TracksLiveEntries) {
    TermPolynomial p;
    p.reset(2, 3);
    EXPECT_TRUE(p.empty());
    p.add(1, 2, CJet::constant(2.0, 3));
    EXPECT_TRUE(p.live(1, 2));
    EXPECT_FALSE(p.live(0, 0));
    p.add(1, 2, CJet::constant(1.0, 3));
    EXPECT_EQ(p.at(1, 2).value(), cplx(3.0));
}
