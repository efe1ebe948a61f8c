#include "levyx/black_scholes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "levyx/error.hpp"

namespace levyx {

namespace {

double ncdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double npdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

void d12(double sigma, double tau, double x, double k, double& d1, double& d2) {
    const double sd = sigma * std::sqrt(tau);
    d1 = (x - k) / sd + 0.5 * sd;
    d2 = d1 - sd;
}

}  // namespace

double bs_call(double sigma, double tau, double x, double k) {
    if (sigma <= 0.0 || tau <= 0.0) return std::max(std::exp(x) - std::exp(k), 0.0);
    double d1, d2;
    d12(sigma, tau, x, k, d1, d2);
    return std::exp(x) * ncdf(d1) - std::exp(k) * ncdf(d2);
}

double bs_put(double sigma, double tau, double x, double k) {
    if (sigma <= 0.0 || tau <= 0.0) return std::max(std::exp(k) - std::exp(x), 0.0);
    double d1, d2;
    d12(sigma, tau, x, k, d1, d2);
    return std::exp(k) * ncdf(-d2) - std::exp(x) * ncdf(-d1);
}

double bs_call_delta(double sigma, double tau, double x, double k) {
    double d1, d2;
    d12(sigma, tau, x, k, d1, d2);
    return ncdf(d1);
}

double bs_vega(double sigma, double tau, double x, double k) {
    double d1, d2;
    d12(sigma, tau, x, k, d1, d2);
    return std::exp(x) * npdf(d1) * std::sqrt(tau);
}

double implied_vol(double price, bool is_call, double tau, double x, double k) {
    require(tau > 0.0, ErrorKind::Config, "implied volatility needs a positive maturity");
    const double S = std::exp(x), K = std::exp(k);
    const double lower = is_call ? std::max(S - K, 0.0) : std::max(K - S, 0.0);
    const double upper = is_call ? S : K;
    if (!(price > lower && price < upper)) {
        std::ostringstream os;
        os.precision(10);
        os << (is_call ? "call" : "put") << " price " << price << " violates the no-arbitrage bound "
           << (price <= lower ? "above intrinsic value " : "below ") << (price <= lower ? lower : upper);
        fail(ErrorKind::Domain, os.str());
    }
    auto f = [&](double s) { return (is_call ? bs_call(s, tau, x, k) : bs_put(s, tau, x, k)) - price; };
    double lo = 1e-8, hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        require(hi < 1e4, ErrorKind::Convergence, "implied volatility bracket diverged");
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double v = f(s);
        if (std::abs(v) < 1e-10 * std::max(1.0, price) && hi - lo < 1e-6) return s;
        if (v > 0.0) hi = s;
        else lo = s;
        const double vega = bs_vega(s, tau, x, k);
        double next = vega > 0.0 ? s - v / vega : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) < 1e-15) return next;
        s = next;
        if (std::abs(f(s)) < 1e-12 * std::max(1.0, price)) return s;
    }
    fail(ErrorKind::Convergence, "implied volatility iteration did not converge");
}

}  // namespace levyx
