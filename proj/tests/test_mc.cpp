#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <algorithm>
#include <cmath>

#include "levyx/black_scholes.hpp"
#include "levyx/mc.hpp"
#include "levyx/pricing.hpp"
#include "levyx/presets.hpp"
#include "levyx/rng.hpp"

using namespace levyx;

namespace {

constexpr cplx I{0.0, 1.0};
const double kPi = std::acos(-1.0);

SimulationConfig config(std::size_t paths, double dt, std::uint64_t seed = 1) {
    SimulationConfig c;
    c.paths = paths;
    c.dt = dt;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Philox, KnownAnswerVectors) {
    using P = Philox4x32;
    EXPECT_EQ(P::block({0u, 0u, 0u, 0u}, {0u, 0u}), (P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(P::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}),
              (P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(P::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, StreamsAreIndependentAndUniformIsOpen) {
    Philox4x32 a(7, 0), b(7, 1), c(7, 0);
    EXPECT_NE(a(), b());
    Philox4x32 d(7, 0);
    EXPECT_EQ(c(), d());
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = a.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(sum / 100000.0, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST(MonteCarlo, NoKillingMeansFullSurvival) {
    const auto s = simulate_paths(cev_gauss_model(), config(2000, 1e-2), 0.0, 0.0, {0.5, 1.0});
    for (const auto& v : s.survived) EXPECT_TRUE(std::all_of(v.begin(), v.end(), [](unsigned char c) { return c == 1; }));
    const auto est = estimate(s.x[1], s.survived[1], [](double) { return 1.0; }, 0.0);
    EXPECT_EQ(est.mean, 1.0);
    EXPECT_EQ(est.se, 0.0);
}

TEST(MonteCarlo, PathsStayFinite) {
    const auto s = simulate_paths(cev_gauss_model(), config(20000, 1e-2, 3), 0.0, 0.0, {5.0});
    EXPECT_TRUE(std::all_of(s.x[0].begin(), s.x[0].end(), [](double x) { return std::isfinite(x); }));
}

TEST(MonteCarlo, CharacteristicFunctionOfConstantModel) {
    const auto p = make_preset("merton");
    const double tau = 0.5;
    const auto s = simulate_paths(p.model, config(50000, 1e-3, 5), 0.0, 0.0, {tau});
    for (double u : {1.0, 2.5}) {
        const cplx truth = std::exp(tau * full_symbol(p.model, 0.0, 0.0, u));
        const auto re = estimate(s.x[0], s.survived[0], [u](double x) { return std::cos(u * x); }, 0.0);
        const auto im = estimate(s.x[0], s.survived[0], [u](double x) { return std::sin(u * x); }, 0.0);
        EXPECT_NEAR(re.mean, truth.real(), 3.0 * re.se) << u;
        EXPECT_NEAR(im.mean, truth.imag(), 3.0 * im.se) << u;
    }
}

TEST(MonteCarlo, VarianceGammaKolmogorovSmirnov) {
    CevVgParams vp;
    vp.beta = 1.0;  // constant coefficients: a pure variance-gamma process
    const auto model = cev_vg_model(vp);
    const double tau = 0.5;
    SimulationConfig cfg = config(20000, tau, 8);
    cfg.scheme = MCScheme::VarianceGammaIncrement;
    const auto s = simulate_paths(model, cfg, 0.0, 0.0, {tau});
    auto x = s.x[0];
    std::sort(x.begin(), x.end());

    // Gil-Pelaez inversion of the closed-form characteristic function
    boost::math::quadrature::exp_sinh<double> es;
    auto cdf = [&](double y) {
        auto f = [&](double u) {
            if (u == 0.0) return 0.0;
            return (std::exp(-I * u * y) * std::exp(tau * full_symbol(model, 0.0, 0.0, u))).imag() / u;
        };
        return 0.5 - es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-10) / kPi;
    };
    double d = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); i += 25) {
        const double F = cdf(x[i]);
        d = std::max({d, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
    }
    EXPECT_LT(d, 1.63 / std::sqrt(n));  // 1% level
}

TEST(MonteCarlo, MartingaleCheck) {
    for (const char* name : {"cev-gauss", "cev-vg"}) {
        const auto p = make_preset(name);
        SimulationConfig cfg = config(50000, 1e-3, 11);
        cfg.scheme = default_scheme(p.model);
        const auto s = simulate_paths(p.model, cfg, 0.0, 0.0, {0.5});
        const auto est = estimate(s.x[0], s.survived[0], [](double x) { return std::exp(x); }, 0.0);
        EXPECT_NEAR(est.mean, 1.0, 3.0 * est.se) << name;
    }
}

TEST(MonteCarlo, SeedDeterminismAndThreadInvariance) {
    const auto model = cev_gauss_model();
    const auto put = PayoffTransform::put(-0.1438);
    SimulationConfig cfg = config(8000, 1e-2, 42);
    cfg.threads = 1;
    const auto a = mc_price(model, cfg, put, 0.0, 0.0, 0.25);
    const auto b = mc_price(model, cfg, put, 0.0, 0.0, 0.25);
    cfg.threads = 4;
    const auto c = mc_price(model, cfg, put, 0.0, 0.0, 0.25);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.se, b.se);
    EXPECT_EQ(a.mean, c.mean);
    EXPECT_EQ(a.se, c.se);
    cfg.seed = 43;
    EXPECT_NE(mc_price(model, cfg, put, 0.0, 0.0, 0.25).mean, a.mean);
}

TEST(MonteCarlo, PrefixOfLargerRunIsTheSmallerRun) {
    const auto model = cev_gauss_model();
    const auto small = simulate_paths(model, config(1000, 1e-2, 9), 0.0, 0.0, {0.25});
    const auto large = simulate_paths(model, config(3000, 1e-2, 9), 0.0, 0.0, {0.25});
    for (std::size_t i = 0; i < 1000; ++i) EXPECT_EQ(small.x[0][i], large.x[0][i]);
}

TEST(MonteCarlo, ConfidenceIntervalCalibration) {
    const auto model = make_preset("bs").model;
    const auto put = PayoffTransform::put(0.0);
    const double tau = 0.5, truth = bs_put(0.2, tau, 0.0, 0.0);
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        // one Euler step is exact for constant coefficients
        const auto est = mc_price(model, config(2000, tau, seed * 7919), put, 0.0, 0.0, tau);
        covered += est.lo <= truth && truth <= est.hi;
    }
    EXPECT_GE(covered, 180);
}

TEST(MonteCarlo, AgreesWithExpansionPrice) {
    const auto p = make_preset("cev-gauss");
    PricingRequest req;
    req.model = p.model;
    req.order = 3;
    req.T = 0.25;
    req.strikes = {-0.1438};
    const double v = price_option(req).rows[0].total;
    const auto est = mc_price(p.model, config(100000, 1e-3, 2), PayoffTransform::put(-0.1438), 0.0, 0.0, 0.25);
    EXPECT_NEAR(est.mean, v, 3.0 * est.se);
}

TEST(MonteCarlo, SurvivalMatchesBondPrice) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::exponential(0.03, -1.0), {}, LevyMeasure());
    PricingRequest req;
    req.model = m;
    req.order = 3;
    req.payoff = PayoffKind::Constant;
    req.T = 1.0;
    const double bond = bond_price(req).value;
    const auto s = simulate_paths(m, config(100000, 1e-2, 4), 0.0, 0.0, {1.0});
    const auto est = estimate(s.x[0], s.survived[0], [](double) { return 1.0; }, 0.0);
    EXPECT_NEAR(est.mean, bond, 3.0 * est.se + 1e-4);
    ModelSpec flat(CoefficientField::constant(0.02), CoefficientField::constant(0.05), {}, LevyMeasure());
    const auto s2 = simulate_paths(flat, config(100000, 1e-2, 4), 0.0, 0.0, {1.0});
    const auto e2 = estimate(s2.x[0], s2.survived[0], [](double) { return 1.0; }, 0.0);
    EXPECT_NEAR(e2.mean, std::exp(-0.05), 3.0 * e2.se);
}

TEST(MonteCarlo, DefaultedPutPaysStrike) {
    ModelSpec m(CoefficientField::constant(0.02), CoefficientField::constant(0.5), {}, LevyMeasure());
    const auto put = PayoffTransform::put(0.0);
    const auto est = mc_price(m, config(50000, 0.05, 6), put, 0.0, 0.0, 1.0);
    // survivors drift up by gamma tau; defaulted paths receive the strike
    const double truth = std::exp(-0.5) * bs_put(0.2, 1.0, 0.5, 0.0) + (1.0 - std::exp(-0.5));
    EXPECT_NEAR(est.mean, truth, 3.0 * est.se);
}

TEST(MonteCarlo, AntitheticEulerIsUnbiased) {
    const auto model = make_preset("bs").model;
    SimulationConfig cfg = config(20000, 0.5, 12);
    cfg.antithetic = true;
    const auto est = mc_price(model, cfg, PayoffTransform::put(0.0), 0.0, 0.0, 0.5);
    EXPECT_NEAR(est.mean, bs_put(0.2, 0.5, 0.0, 0.0), 3.0 * est.se);
}

TEST(MonteCarlo, Rejections) {
    SimulationConfig cfg = config(1000, 1e-2);
    cfg.scheme = MCScheme::VarianceGammaIncrement;
    EXPECT_THROW(simulate_paths(cev_gauss_model(), cfg, 0.0, 0.0, {0.5}), Error);
    cfg.antithetic = true;
    try {
        simulate_paths(cev_vg_model(), cfg, 0.0, 0.0, {0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
    }
    EXPECT_THROW(mc_price(cev_gauss_model(), config(1000, 1e-2), PayoffTransform::delta(0.0), 0.0, 0.0, 0.5), Error);
    EXPECT_EQ(mc_scheme_from_string("vg"), MCScheme::VarianceGammaIncrement);
    EXPECT_THROW(mc_scheme_from_string("milstein"), Error);
    EXPECT_EQ(resolve_threads(3), 3u);
}
