#pragma once

#include <limits>
#include <string>
#include <vector>

#include "levyx/basis.hpp"
#include "levyx/expand.hpp"
#include "levyx/fourier.hpp"
#include "levyx/model.hpp"
#include "levyx/payoff.hpp"

namespace levyx {

enum class EngineKind { Auto, Homogeneous, Inhomogeneous };

std::string to_string(EngineKind e);
EngineKind engine_kind_from_string(const std::string& s);

struct PricingRequest {
    ModelSpec model;
    BasisSpec basis;
    int order = 3;
    PayoffKind payoff = PayoffKind::Put;
    double t = 0.0;
    double T = 1.0;
    double x0 = 0.0;
    std::vector<double> strikes;  // log-strikes; target log-prices y for densities
    EngineKind engine = EngineKind::Auto;
    double contour = std::numeric_limits<double>::quiet_NaN();  // Im(xi); NaN = payoff default
    FourierOptions fourier;
    int time_quad_order = 24;
    bool implied_vol = true;
    /// Defaulted puts pay the full strike (S jumps to zero).
    bool default_payment = true;
};

struct PricingResult {
    double k = 0.0;
    std::vector<double> terms;  // v_0..v_N
    double total = 0.0;
    double iv = std::numeric_limits<double>::quiet_NaN();
    double elapsed = 0.0;  // seconds, share of the batch
    double imag = 0.0;     // imaginary residue of the inversion
};

struct PricingReport {
    std::vector<PricingResult> rows;
    double elapsed = 0.0;
    double R = 0.0;
    double contour = 0.0;
    std::vector<std::string> warnings;
};

/// Calls, puts and deltas for every strike of the request, sharing the
/// payoff-independent kernel across strikes.
PricingReport price_option(const PricingRequest& req);

/// p^(N)(t, x0; T, y) for each y in `ys`. With `center_at_y` the Taylor
/// center is moved to each y (one expansion per point).
PricingReport density(const PricingRequest& req, const std::vector<double>& ys, bool center_at_y = false);

/// Expectation of e^{-int gamma} h(X_T) for an arbitrary transform on the
/// contour Im(xi) = contour; one result per element of `hats`.
PricingReport price_transform(const PricingRequest& req, const std::vector<HatJet>& hats, double contour);

struct BondResult {
    std::vector<double> terms;
    double value = 0.0;
    double spread = 0.0;
};

/// Survival value E[e^{-int gamma}] by derivatives at zero frequency; no
/// contour quadrature.
BondResult bond_price(const PricingRequest& req);

struct Greeks {
    double k = 0.0;
    double value = 0.0;
    double delta = 0.0;  // d/dS0
    double gamma = 0.0;  // d^2/dS0^2
};

/// Sensitivities to the spot by differentiating under the inverse transform
/// (the expansion itself is held fixed).
std::vector<Greeks> greeks(const PricingRequest& req);

/// Expansion built for the request (basis defaults resolved against x0).
SymbolExpansion request_expansion(const PricingRequest& req);

}  // namespace levyx
