#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyx/model.hpp"
#include "levyx/payoff.hpp"

namespace levyx {

enum class MCScheme { EulerGaussianJump, VarianceGammaIncrement };

std::string to_string(MCScheme s);
MCScheme mc_scheme_from_string(const std::string& s);
/// Scheme matching the model's jump measure.
MCScheme default_scheme(const ModelSpec& model);

struct SimulationConfig {
    MCScheme scheme = MCScheme::EulerGaussianJump;
    double dt = 1e-3;
    std::size_t paths = 100000;
    std::uint64_t seed = 20240607;
    bool antithetic = false;
    /// Paths falling below this log-price are frozen there (S is zero to
    /// double precision); keeps state-dependent coefficients finite.
    double absorb_below = -30.0;
    unsigned threads = 0;  // 0: LEVYX_THREADS or the hardware count
};

/// Terminal states at each requested maturity.
struct TerminalSamples {
    std::vector<double> maturities;
    std::vector<std::vector<double>> x;                 // [maturity][path]
    std::vector<std::vector<unsigned char>> survived;   // [maturity][path]
    double elapsed = 0.0;
};

struct MCEstimate {
    double mean = 0.0;
    double se = 0.0;
    double lo = 0.0, hi = 0.0;  // 95% interval, mean -+ 1.96 se
    std::size_t paths = 0;
    double elapsed = 0.0;
};

/// Simulate X from x0 at time t to each maturity (ascending, > t).
TerminalSamples simulate_paths(const ModelSpec& model, const SimulationConfig& cfg, double x0, double t,
                               const std::vector<double>& maturities);

/// Mean of h(X_T) on surviving paths and `default_value` on defaulted ones.
MCEstimate estimate(const std::vector<double>& x, const std::vector<unsigned char>& survived,
                    const std::function<double(double)>& h, double default_value, double elapsed = 0.0);

/// Payoff price with CI; a defaulted put pays its strike.
MCEstimate mc_price(const ModelSpec& model, const SimulationConfig& cfg, const PayoffTransform& payoff,
                    double x0, double t, double T);

/// Worker count: cfg.threads, else LEVYX_THREADS, else the hardware count.
unsigned resolve_threads(unsigned requested);

}  // namespace levyx
