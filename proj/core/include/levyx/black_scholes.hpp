#pragma once

namespace levyx {

/// Zero-rate Black-Scholes prices in log-spot x and log-strike k.
double bs_call(double sigma, double tau, double x, double k);
double bs_put(double sigma, double tau, double x, double k);
double bs_call_delta(double sigma, double tau, double x, double k);
double bs_vega(double sigma, double tau, double x, double k);

/// Volatility reproducing `price` to 1e-10, by safeguarded Newton on a
/// bracket. Raises a domain error naming the violated no-arbitrage bound.
double implied_vol(double price, bool is_call, double tau, double x, double k);

}  // namespace levyx
