#include "levyx/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "levyx/error.hpp"
#include "levyx/rng.hpp"

namespace levyx {

namespace {

struct StepPlan {
    double t0, dt;
    double floor;
    std::vector<std::size_t> record_at;  // step counts at which maturities are reached
    std::size_t steps = 0;
};

StepPlan plan_steps(double t, const std::vector<double>& maturities, double dt, double floor) {
    require(dt > 0.0, ErrorKind::Config, "time step must be positive");
    require(!maturities.empty(), ErrorKind::Config, "at least one maturity is needed");
    StepPlan p{t, dt, floor, {}, 0};
    double prev = t;
    for (double T : maturities) {
        require(T > prev, ErrorKind::Config, "maturities must be increasing and after the start time");
        prev = T;
        p.record_at.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround((T - t) / dt))));
    }
    p.steps = p.record_at.back();
    return p;
}

class EulerPath {
public:
    EulerPath(const ModelSpec& m) : m_(m), g_(m.measure().is_zero() ? GaussianJumps{0, 0, 1} : m.measure().gaussian_params()) {
        comp_ = m.measure().is_zero() ? 0.0 : m.measure().compensator();
    }

    template <class Record>
    void run(Philox4x32& rng, double sign, double x, const StepPlan& plan, Record&& record) const {
        std::normal_distribution<double> normal;
        std::exponential_distribution<double> expo;
        const double threshold = expo(rng);
        double hazard = 0.0, t = plan.t0;
        double gam = m_.gamma()(t, x);
        std::size_t next = 0;
        bool absorbed = false;
        for (std::size_t s = 1; s <= plan.steps; ++s) {
            if (absorbed) {
                while (next < plan.record_at.size() && plan.record_at[next] == s) record(next++, x, hazard < threshold);
                continue;
            }
            const double a = m_.a()(t, x);
            const double mult = g_.lambda > 0.0 ? m_.multiplier()(t, x) : 0.0;
            const double drift = gam - a - mult * (comp_ + g_.lambda * g_.mean);
            const double z = sign * normal(rng);
            double nx = x + drift * plan.dt + std::sqrt(2.0 * std::max(a, 0.0) * plan.dt) * z;
            if (g_.lambda > 0.0) {
                const double u = rng.uniform();
                const double jz = sign * normal(rng);
                if (u < mult * g_.lambda * plan.dt) nx += g_.mean + g_.stdev * jz;
            }
            t = plan.t0 + static_cast<double>(s) * plan.dt;
            if (!(nx > plan.floor)) {
                x = plan.floor;
                absorbed = true;
                while (next < plan.record_at.size() && plan.record_at[next] == s) record(next++, x, hazard < threshold);
                continue;
            }
            const double ngam = m_.gamma()(t, nx);
            hazard += 0.5 * (gam + ngam) * plan.dt;
            x = nx;
            gam = ngam;
            while (next < plan.record_at.size() && plan.record_at[next] == s) record(next++, x, hazard < threshold);
        }
    }

private:
    const ModelSpec& m_;
    GaussianJumps g_;
    double comp_ = 0.0;
};

class VgPath {
public:
    VgPath(const ModelSpec& m) : m_(m), v_(m.measure().vg_params()) {
        drift_per_unit_ = -(std::log(v_.lambda_minus / (1.0 + v_.lambda_minus)) +
                            std::log(v_.lambda_plus / (v_.lambda_plus - 1.0))) / v_.kappa;
    }

    template <class Record>
    void run(Philox4x32& rng, double, double x, const StepPlan& plan, Record&& record) const {
        std::normal_distribution<double> normal;
        std::exponential_distribution<double> expo;
        const double threshold = expo(rng);
        double hazard = 0.0, t = plan.t0;
        double gam = m_.gamma()(t, x);
        std::size_t next = 0;
        bool absorbed = false;
        for (std::size_t s = 1; s <= plan.steps; ++s) {
            if (absorbed) {
                while (next < plan.record_at.size() && plan.record_at[next] == s) record(next++, x, hazard < threshold);
                continue;
            }
            const double I = std::max(m_.multiplier()(t, x), 0.0);
            const double a = m_.a()(t, x);
            double nx = x + (I * drift_per_unit_ + gam - a) * plan.dt;
            if (a > 0.0) nx += std::sqrt(2.0 * a * plan.dt) * normal(rng);
            if (I > 0.0) {
                const double shape = I * plan.dt / v_.kappa;
                std::gamma_distribution<double> up(shape, 1.0 / v_.lambda_plus);
                std::gamma_distribution<double> down(shape, 1.0 / v_.lambda_minus);
                nx += up(rng) - down(rng);
            }
            t = plan.t0 + static_cast<double>(s) * plan.dt;
            if (!(nx > plan.floor)) {
                x = plan.floor;
                absorbed = true;
                while (next < plan.record_at.size() && plan.record_at[next] == s) record(next++, x, hazard < threshold);
                continue;
            }
            const double ngam = m_.gamma()(t, nx);
            hazard += 0.5 * (gam + ngam) * plan.dt;
            x = nx;
            gam = ngam;
            while (next < plan.record_at.size() && plan.record_at[next] == s) record(next++, x, hazard < threshold);
        }
    }

private:
    const ModelSpec& m_;
    VarianceGammaJumps v_;
    double drift_per_unit_ = 0.0;
};

template <class Path>
void run_all(const Path& path, const SimulationConfig& cfg, double x0, const StepPlan& plan,
             TerminalSamples& out) {
    const std::size_t P = cfg.paths;
    const unsigned workers = std::max(1u, std::min<unsigned>(resolve_threads(cfg.threads), static_cast<unsigned>(std::max<std::size_t>(P / 1000, 1))));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t stream = cfg.antithetic ? i / 2 : i;
            const double sign = (cfg.antithetic && (i % 2 == 1)) ? -1.0 : 1.0;
            Philox4x32 rng(cfg.seed, stream);
            path.run(rng, sign, x0, plan, [&](std::size_t m, double x, bool alive) {
                out.x[m][i] = x;
                out.survived[m][i] = alive ? 1 : 0;
            });
        }
    };
    if (workers == 1) {
        work(0, P);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (P + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk, e = std::min(P, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::string to_string(MCScheme s) {
    return s == MCScheme::EulerGaussianJump ? "euler" : "vg";
}

MCScheme mc_scheme_from_string(const std::string& s) {
    if (s == "euler") return MCScheme::EulerGaussianJump;
    if (s == "vg") return MCScheme::VarianceGammaIncrement;
    fail(ErrorKind::Config, "unknown Monte Carlo scheme '" + s + "' (expected euler or vg)");
}

MCScheme default_scheme(const ModelSpec& model) {
    return model.measure().kind() == LevyMeasure::Kind::VarianceGamma ? MCScheme::VarianceGammaIncrement
                                                                       : MCScheme::EulerGaussianJump;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LEVYX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

TerminalSamples simulate_paths(const ModelSpec& model, const SimulationConfig& cfg, double x0, double t,
                               const std::vector<double>& maturities) {
    require(cfg.paths >= 1, ErrorKind::Config, "path count must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();
    const StepPlan plan = plan_steps(t, maturities, cfg.dt, cfg.absorb_below);
    TerminalSamples out;
    out.maturities = maturities;
    out.x.assign(maturities.size(), std::vector<double>(cfg.paths));
    out.survived.assign(maturities.size(), std::vector<unsigned char>(cfg.paths));

    const LevyMeasure::Kind kind = model.measure().kind();
    switch (cfg.scheme) {
        case MCScheme::EulerGaussianJump:
            require(model.measure().is_zero() || kind == LevyMeasure::Kind::Gaussian, ErrorKind::Config,
                    "Euler scheme with thinning needs Gaussian jumps, got " + model.measure().describe());
            run_all(EulerPath(model), cfg, x0, plan, out);
            break;
        case MCScheme::VarianceGammaIncrement:
            require(kind == LevyMeasure::Kind::VarianceGamma, ErrorKind::Config,
                    "Gamma-increment scheme needs variance-gamma jumps, got " + model.measure().describe());
            require(!cfg.antithetic, ErrorKind::Unsupported, "antithetic sampling is not available for Gamma increments");
            run_all(VgPath(model), cfg, x0, plan, out);
            break;
    }
    out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

MCEstimate estimate(const std::vector<double>& x, const std::vector<unsigned char>& survived,
                    const std::function<double(double)>& h, double default_value, double elapsed) {
    require(!x.empty() && x.size() == survived.size(), ErrorKind::Config, "sample arrays are inconsistent");
    // two-pass mean and variance
    const std::size_t n = x.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += survived[i] ? h(x[i]) : default_value;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (survived[i] ? h(x[i]) : default_value) - mean;
        ss += d * d;
    }
    MCEstimate e;
    e.mean = mean;
    e.paths = n;
    e.se = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    e.lo = mean - 1.96 * e.se;
    e.hi = mean + 1.96 * e.se;
    e.elapsed = elapsed;
    return e;
}

MCEstimate mc_price(const ModelSpec& model, const SimulationConfig& cfg, const PayoffTransform& payoff,
                    double x0, double t, double T) {
    const TerminalSamples s = simulate_paths(model, cfg, x0, t, {T});
    double on_default = 0.0;
    if (payoff.kind() == PayoffKind::Put) on_default = std::exp(payoff.parameter());
    if (payoff.kind() == PayoffKind::Constant) on_default = 0.0;
    require(payoff.kind() != PayoffKind::Delta, ErrorKind::Unsupported,
            "Monte Carlo estimates of point densities need a histogram, not a payoff");
    return estimate(s.x[0], s.survived[0], [&](double x) { return payoff.payoff(x); }, on_default, s.elapsed);
}

}  // namespace levyx
