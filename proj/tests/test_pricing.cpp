#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>

#include "levyx/black_scholes.hpp"
#include "levyx/pricing.hpp"
#include "levyx/presets.hpp"

using namespace levyx;

namespace {

constexpr cplx I{0.0, 1.0};
const double kPi = std::acos(-1.0);

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// E[(e^k - e^X)^+] for X ~ N(mu, v).
double gaussian_put(double mu, double v, double k) {
    const double s = std::sqrt(v);
    return std::exp(k) * norm_cdf((k - mu) / s) - std::exp(mu + 0.5 * v) * norm_cdf((k - mu - v) / s);
}

// Merton series: condition on the number of jumps.
double merton_put(double a, double lambda, double m, double eta, double tau, double x, double k) {
    const double comp = lambda * (std::exp(m + 0.5 * eta * eta) - 1.0 - m);
    double acc = 0.0, pn = std::exp(-lambda * tau);
    for (int n = 0; n < 80; ++n) {
        if (n > 0) pn *= lambda * tau / n;
        const double mu = x + (-a - comp - lambda * m) * tau + n * m;
        acc += pn * gaussian_put(mu, 2.0 * a * tau + n * eta * eta, k);
    }
    return acc;
}

// Lewis-style single integral of the characteristic function, put via parity.
double cf_put(const std::function<cplx(cplx)>& psi, double tau, double x, double k) {
    boost::math::quadrature::exp_sinh<double> es;
    auto f = [&](double u) {
        const cplx z(u, -0.5);
        return (std::exp(I * u * (x - k)) * std::exp(tau * psi(z))).real() / (u * u + 0.25);
    };
    const double call = std::exp(x) - std::exp(0.5 * (x + k)) / kPi * es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
    return call - std::exp(x) + std::exp(k);
}

PricingRequest request(const Preset& p, int order, PayoffKind payoff, double T, std::vector<double> ks) {
    PricingRequest r;
    r.model = p.model;
    r.x0 = p.x0;
    r.order = order;
    r.payoff = payoff;
    r.T = T;
    r.strikes = std::move(ks);
    return r;
}

}  // namespace

TEST(Pricing, BlackScholesPreset) {
    const auto req = request(make_preset("bs"), 3, PayoffKind::Put, 0.75, {-0.3, 0.0, 0.25});
    const auto rep = price_option(req);
    for (const auto& row : rep.rows) {
        EXPECT_NEAR(row.total, bs_put(0.2, 0.75, 0.0, row.k), 1e-10) << row.k;
        EXPECT_NEAR(row.iv, 0.2, 1e-8);
    }
}

TEST(Pricing, ConstantCoefficientsMatchCharacteristicFunctionQuadrature) {
    const auto p = make_preset("merton");
    const auto& m = p.model;
    auto psi = [&](cplx xi) { return full_symbol(m, 0.0, 0.0, xi); };
    for (double T : {0.25, 1.0, 3.0}) {
        const auto rep = price_option(request(p, 0, PayoffKind::Put, T, {-0.5, -0.1, 0.0, 0.3}));
        for (const auto& row : rep.rows) {
            EXPECT_NEAR(row.total, cf_put(psi, T, 0.0, row.k), 1e-8) << T << " " << row.k;
            EXPECT_NEAR(row.total, merton_put(0.02, 0.3, -0.1, 0.4, T, 0.0, row.k), 1e-8) << T << " " << row.k;
        }
    }
}

TEST(Pricing, CallsOnConstantCoefficientModel) {
    const auto p = make_preset("merton");
    auto req = request(p, 0, PayoffKind::Call, 1.0, {-0.2, 0.2});
    const auto rep = price_option(req);
    for (const auto& row : rep.rows) {
        const double put = merton_put(0.02, 0.3, -0.1, 0.4, 1.0, 0.0, row.k);
        EXPECT_NEAR(row.total, put + 1.0 - std::exp(row.k), 1e-8);
    }
}

TEST(Pricing, GaussianTableSpotChecks) {
    const auto p = make_preset("cev-gauss");
    const auto rep = price_option(request(p, 3, PayoffKind::Put, 0.25, {-0.1438}));
    EXPECT_NEAR(rep.rows[0].total, 0.0111, 5e-4);
    EXPECT_NEAR(rep.rows[0].iv, 0.2875, 2e-3);
    const auto rep5 = price_option(request(p, 3, PayoffKind::Put, 5.0, {-0.2554}));
    EXPECT_NEAR(rep5.rows[0].total, 0.1504, 5e-4);
    EXPECT_NEAR(rep5.rows[0].iv, 0.3203, 2e-3);
}

TEST(Pricing, PutCallParity) {
    const auto p = make_preset("cev-gauss");
    const std::vector<double> ks{-0.4, -0.1, 0.2};
    const auto puts = price_option(request(p, 3, PayoffKind::Put, 1.0, ks));
    const auto calls = price_option(request(p, 3, PayoffKind::Call, 1.0, ks));
    for (std::size_t i = 0; i < ks.size(); ++i) {
        EXPECT_NEAR(calls.rows[i].total - puts.rows[i].total, 1.0 - std::exp(ks[i]), 1e-9);
        for (std::size_t n = 1; n < puts.rows[i].terms.size(); ++n)
            EXPECT_NEAR(calls.rows[i].terms[n], puts.rows[i].terms[n], 1e-9);
    }
}

TEST(Pricing, CorrectionsShrinkWithOrder) {
    const auto p = make_preset("cev-gauss");
    const auto rep = price_option(request(p, 4, PayoffKind::Put, 1.0, {-0.2554}));
    const auto& v = rep.rows[0].terms;
    ASSERT_EQ(v.size(), 5u);
    EXPECT_GT(std::abs(v[1]), std::abs(v[3]));
    EXPECT_GT(std::abs(v[2]), std::abs(v[4]));
    EXPECT_LT(std::abs(v[4]), 1e-4);
}

TEST(Pricing, DefaultablePutDecomposition) {
    ModelSpec m(CoefficientField::exponential(0.02, -1.5), CoefficientField::exponential(0.05, -1.0),
                CoefficientField::exponential(1.0, -1.5), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    PricingRequest req;
    req.model = m;
    req.order = 2;
    req.payoff = PayoffKind::Put;
    req.T = 1.0;
    const double k = -0.1;
    req.strikes = {k};
    const auto put = price_option(req);
    // (e^k - e^X)^+ on survival plus e^k on default equals e^k + E[1_alive (-min(e^X, e^k))].
    const HatJet minimum = [k](cplx xi, int order) { return rational_payoff_jet(k, -1.0, xi, order); };
    const auto rest = price_transform(req, {minimum}, -0.5);
    EXPECT_NEAR(put.rows[0].total, std::exp(k) + rest.rows[0].total, 1e-9);
    for (std::size_t n = 1; n < put.rows[0].terms.size(); ++n)
        EXPECT_NEAR(put.rows[0].terms[n], rest.rows[0].terms[n], 1e-9);

    req.default_payment = false;
    const auto survival_only = price_option(req);
    EXPECT_LT(survival_only.rows[0].total, put.rows[0].total);
}

TEST(Density, BlackScholesIsGaussian) {
    auto req = request(make_preset("bs"), 2, PayoffKind::Delta, 0.5, {});
    const std::vector<double> ys{-0.5, -0.1, 0.0, 0.2, 0.6};
    const auto rep = density(req, ys);
    const double v = 0.04 * 0.5, mu = -0.5 * v;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double truth = std::exp(-0.5 * (ys[i] - mu) * (ys[i] - mu) / v) / std::sqrt(2.0 * kPi * v);
        EXPECT_NEAR(rep.rows[i].total, truth, 1e-9) << ys[i];
    }
}

TEST(Density, MassEqualsSurvivalWithConstantKilling) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::constant(0.07), {}, LevyMeasure());
    PricingRequest req;
    req.model = m;
    req.order = 1;
    req.payoff = PayoffKind::Delta;
    req.T = 2.0;
    std::vector<double> ys;
    for (double y = -3.0; y <= 3.0 + 1e-12; y += 0.02) ys.push_back(y);
    const auto rep = density(req, ys);
    double mass = 0.0;
    for (std::size_t i = 1; i < ys.size(); ++i) mass += 0.5 * (rep.rows[i].total + rep.rows[i - 1].total) * 0.02;
    EXPECT_NEAR(mass, std::exp(-0.14), 1e-9);
}

TEST(Density, CevGaussMassAndMartingale) {
    auto req = request(make_preset("cev-gauss"), 3, PayoffKind::Delta, 1.0, {});
    std::vector<double> ys;
    const double dy = 0.01;
    for (double y = -5.0; y <= 4.0 + 1e-12; y += dy) ys.push_back(y);
    const auto rep = density(req, ys);
    double mass = 0.0, mean = 0.0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        mass += 0.5 * (rep.rows[i].total + rep.rows[i - 1].total) * dy;
        mean += 0.5 * (std::exp(ys[i]) * rep.rows[i].total + std::exp(ys[i - 1]) * rep.rows[i - 1].total) * dy;
    }
    EXPECT_NEAR(mass, 1.0, 1e-5);
    EXPECT_NEAR(mean, 1.0, 1e-5);
}

TEST(Bond, ConstantKillingIsExactWithoutQuadrature) {
    ModelSpec m(CoefficientField::exponential(0.02, -1.5), CoefficientField::constant(0.05),
                CoefficientField::exponential(1.0, -1.5), LevyMeasure::gaussian(0.3, -0.1, 0.4));
    PricingRequest req;
    req.model = m;
    req.order = 3;
    req.payoff = PayoffKind::Constant;
    req.T = 2.0;
    const auto before = contour_quadrature_count();
    const auto b = bond_price(req);
    EXPECT_EQ(contour_quadrature_count(), before);
    EXPECT_NEAR(b.value, std::exp(-0.1), 1e-15);
    EXPECT_NEAR(b.spread, 0.05, 1e-14);
    for (std::size_t n = 1; n < b.terms.size(); ++n) EXPECT_NEAR(b.terms[n], 0.0, 1e-16);
}

TEST(Bond, NoKillingGivesParAndZeroSpread) {
    auto req = request(make_preset("cev-gauss"), 3, PayoffKind::Constant, 1.0, {});
    const auto b = bond_price(req);
    EXPECT_EQ(b.value, 1.0);
    EXPECT_EQ(b.spread, 0.0);
}

TEST(Bond, StateDependentKillingMatchesTaylorHeuristic) {
    // gamma = g e^{-x} under pure diffusion; survival is close to exp(-g tau) for small tau.
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::exponential(0.03, -1.0), {}, LevyMeasure());
    PricingRequest req;
    req.model = m;
    req.order = 3;
    req.payoff = PayoffKind::Constant;
    req.T = 0.5;
    const auto b = bond_price(req);
    EXPECT_LT(b.value, 1.0);
    EXPECT_NEAR(b.value, std::exp(-0.015), 1e-4);
    EXPECT_TRUE(std::abs(b.terms[1]) > 0.0);
}

TEST(Greeks, BlackScholesDeltaAndGamma) {
    auto req = request(make_preset("bs"), 2, PayoffKind::Call, 0.5, {-0.2, 0.0, 0.3});
    const auto g = greeks(req);
    for (const auto& row : g) {
        EXPECT_NEAR(row.delta, bs_call_delta(0.2, 0.5, 0.0, row.k), 1e-9);
        const double sd = 0.2 * std::sqrt(0.5);
        const double d1 = (-row.k + 0.5 * sd * sd) / sd;
        const double gam = std::exp(-0.5 * d1 * d1) / std::sqrt(2.0 * kPi) / sd;
        EXPECT_NEAR(row.gamma, gam, 1e-8);
    }
}

TEST(Greeks, AgreeWithFiniteDifferencesAtFixedExpansion) {
    const auto p = make_preset("cev-gauss");
    auto req = request(p, 3, PayoffKind::Put, 1.0, {-0.2554, 0.0});
    req.basis.xbar = 0.0;
    const auto g = greeks(req);
    const double h = 1e-4;
    auto at = [&](double x0) {
        auto r = req;
        r.x0 = x0;
        r.implied_vol = false;
        return price_option(r);
    };
    const auto up = at(h), dn = at(-h), mid = at(0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        // S = e^x: dV/dS = V_x / S, d2V/dS2 = (V_xx - V_x) / S^2 at S = 1
        const double vx = (up.rows[i].total - dn.rows[i].total) / (2.0 * h);
        const double vxx = (up.rows[i].total - 2.0 * mid.rows[i].total + dn.rows[i].total) / (h * h);
        EXPECT_NEAR(g[i].delta, vx, 1e-6);
        EXPECT_NEAR(g[i].gamma, vxx - vx, 1e-4);
        EXPECT_NEAR(g[i].value, mid.rows[i].total, 1e-12);
        EXPECT_LT(g[i].delta, 0.0);
        EXPECT_GT(g[i].delta, -1.0);
    }
}

TEST(ImpliedVol, RoundTrip) {
    for (double sigma : {0.05, 0.2, 0.9}) {
        for (double k : {-0.7, 0.0, 0.4}) {
            // skip prices indistinguishable from intrinsic value in double precision
            if (bs_vega(sigma, 1.5, 0.1, k) < 1e-6) continue;
            EXPECT_NEAR(implied_vol(bs_put(sigma, 1.5, 0.1, k), false, 1.5, 0.1, k), sigma, 1e-8);
            EXPECT_NEAR(implied_vol(bs_call(sigma, 1.5, 0.1, k), true, 1.5, 0.1, k), sigma, 1e-8);
        }
    }
}

TEST(ImpliedVol, ArbitrageViolations) {
    try {
        implied_vol(1e-9, false, 1.0, 0.0, 0.5);  // below intrinsic
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
    EXPECT_THROW(implied_vol(1.5, true, 1.0, 0.0, 0.0), Error);  // above the spot
}

TEST(Pricing, InvalidRequests) {
    auto req = request(make_preset("cev-gauss"), 3, PayoffKind::Put, 1.0, {0.0});
    req.t = 1.0;
    EXPECT_THROW(price_option(req), Error);
    req.t = 0.0;
    req.contour = -0.5;
    EXPECT_THROW(price_option(req), Error);
    req.contour = std::numeric_limits<double>::quiet_NaN();
    req.payoff = PayoffKind::Constant;
    EXPECT_THROW(price_option(req), Error);
}

TEST(Pricing, InhomogeneousEngineAgreesOnHomogeneousModel) {
    auto req = request(make_preset("cev-gauss"), 2, PayoffKind::Put, 1.0, {-0.2554, 0.2189});
    const auto a = price_option(req);
    req.engine = EngineKind::Inhomogeneous;
    const auto b = price_option(req);
    for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_NEAR(a.rows[i].total, b.rows[i].total, 1e-9);
}

TEST(Pricing, DeterministicOutput) {
    auto req = request(make_preset("cev-vg"), 2, PayoffKind::Put, 0.5, {-0.4185, 0.1308});
    req.basis.family = BasisFamily::TwoPoint;
    const auto a = price_option(req), b = price_option(req);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].total, b.rows[i].total);
        EXPECT_EQ(a.rows[i].terms, b.rows[i].terms);
    }
}

TEST(Pricing, ConstantKillingPutClosedForm) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::constant(0.5), {}, LevyMeasure());
    PricingRequest req;
    req.model = m;
    req.order = 2;
    req.T = 1.0;
    req.strikes = {0.0, 0.2};
    const auto rep = price_option(req);
    for (const auto& row : rep.rows) {
        const double truth = std::exp(-0.5) * bs_put(0.2, 1.0, 0.5, row.k) + std::exp(row.k) * (1.0 - std::exp(-0.5));
        EXPECT_NEAR(row.total, truth, 1e-10) << row.k;
    }
}
