#include "levyx/pricing.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "levyx/black_scholes.hpp"
#include "levyx/error.hpp"
#include "levyx/quadrature.hpp"

namespace levyx {

namespace {

constexpr cplx I{0.0, 1.0};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool use_homogeneous(const PricingRequest& req, const SymbolExpansion& e) {
    switch (req.engine) {
        case EngineKind::Homogeneous:
            require(e.time_homogeneous, ErrorKind::Config,
                    "homogeneous engine requested for time-dependent coefficients");
            return true;
        case EngineKind::Inhomogeneous: return false;
        case EngineKind::Auto: break;
    }
    return e.time_homogeneous;
}

void validate(const PricingRequest& req) {
    require(req.t < req.T, ErrorKind::Config, "start time must precede maturity");
    require(req.order >= 0, ErrorKind::Config, "expansion order must be nonnegative");
    for (double k : req.strikes)
        require(std::isfinite(k), ErrorKind::Config, "strikes must be finite");
}

// integral over [t, T] of the order-0 coefficients
FrozenCoeffs integrated_coeffs0(const SymbolExpansion& e, double t, double T) {
    if (e.time_homogeneous) return (T - t) * e.constant_coeffs[0];
    const QuadratureRule r = gauss_legendre(48, t, T);
    FrozenCoeffs acc{};
    for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * e.coefficients(r.nodes[i])[0];
    return acc;
}

// Term values [hat][n] at every node of the grid; optional multiplication
// by (i xi)^power for spot derivatives.
struct Sampled {
    std::vector<std::vector<std::vector<cplx>>> v;  // [hat][n][node]
};

class TermSampler {
public:
    TermSampler(const PricingRequest& req, const SymbolExpansion& e, const std::vector<HatJet>& hats)
        : req_(req), e_(e), hats_(hats), homogeneous_(use_homogeneous(req, e)) {
        if (homogeneous_) {
            hom_ = std::make_unique<HomogeneousEngine>(e, req.order);
            J_ = hom_->payoff_derivatives();
        } else {
            inh_ = std::make_unique<InhomogeneousEngine>(e, req.order, req.t, req.T, req.time_quad_order);
            J_ = inh_->payoff_derivatives();
        }
    }

    // values[hat][n] at xi
    void sample(cplx xi, std::vector<std::vector<cplx>>& out) {
        const int N = req_.order;
        out.assign(hats_.size(), std::vector<cplx>(static_cast<std::size_t>(N) + 1));
        hd_.resize(static_cast<std::size_t>(J_) + 1);
        if (homogeneous_) {
            hom_->kernel(xi, kernel_, ws_);
            const double tau = req_.T - req_.t;
            for (std::size_t s = 0; s < hats_.size(); ++s) {
                load_payoff(s, xi);
                for (int n = 0; n <= N; ++n) out[s][static_cast<std::size_t>(n)] = kernel_.value(n, tau, hd_);
            }
        } else {
            const auto C = inh_->coefficient_jets(xi);
            for (std::size_t s = 0; s < hats_.size(); ++s) {
                load_payoff(s, xi);
                for (int n = 0; n <= N; ++n) {
                    cplx acc = 0.0;
                    const auto& row = C[static_cast<std::size_t>(n)];
                    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j][0] * hd_[j];
                    out[s][static_cast<std::size_t>(n)] = acc;
                }
            }
        }
    }

    bool homogeneous() const noexcept { return homogeneous_; }

private:
    void load_payoff(std::size_t s, cplx xi) {
        const CJet h = hats_[s](xi, J_);
        for (int j = 0; j <= J_; ++j) hd_[static_cast<std::size_t>(j)] = h.derivative_value(j);
    }

    const PricingRequest& req_;
    const SymbolExpansion& e_;
    const std::vector<HatJet>& hats_;
    bool homogeneous_;
    int J_ = 0;
    std::unique_ptr<HomogeneousEngine> hom_;
    std::unique_ptr<InhomogeneousEngine> inh_;
    TermKernel kernel_;
    ExpandWorkspace ws_;
    std::vector<cplx> hd_;
};

// Shared pipeline: choose R, sample the terms, invert each (hat, order).
// `power` selects (i xi)^power for spot derivatives; results [power][hat][n].
struct Inverted {
    std::vector<std::vector<std::vector<double>>> value;  // [power][hat][n]
    std::vector<std::vector<double>> imag;                // [hat] of power 0 total
    bool imag_warning = false;
    double R = 0.0;
};

Inverted invert_terms(const PricingRequest& req, const SymbolExpansion& e, const std::vector<HatJet>& hats,
                      double contour, int max_power) {
    const FrozenCoeffs c0 = integrated_coeffs0(e, req.t, req.T);
    const LevyMeasure& measure = *e.measure;
    auto magnitude = [&](double xr) {
        const cplx xi(xr, contour);
        const cplx growth = std::exp(symbol_blocks(measure, xi).combine(c0) + I * xi * req.x0);
        double h = 0.0;
        for (const auto& hat : hats) h = std::max(h, std::abs(hat(xi, 0)[0]));
        return std::abs(growth) * std::max(h, 1e-300);
    };
    auto decay = [&](double xr) {
        const cplx xi(xr, contour);
        return std::exp((symbol_blocks(measure, xi).combine(c0)).real());
    };
    FourierOptions opt = req.fourier;
    double R = opt.R;
    if (R <= 0.0) {
        // both the exponential factor and the full integrand must be small
        const double r1 = choose_truncation(decay, opt);
        const double r2 = choose_truncation(magnitude, opt);
        R = std::max(r1, r2);
    }
    const FourierGrid grid = fourier_grid(contour, R, opt);

    TermSampler sampler(req, e, hats);
    const std::size_t H = hats.size(), N1 = static_cast<std::size_t>(req.order) + 1;
    std::vector<std::vector<std::vector<cplx>>> samples(H, std::vector<std::vector<cplx>>(N1, std::vector<cplx>(grid.size())));
    std::vector<std::vector<cplx>> at;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sampler.sample(grid.xi(i), at);
        for (std::size_t s = 0; s < H; ++s)
            for (std::size_t n = 0; n < N1; ++n) samples[s][n][i] = at[s][n];
    }

    if (!sampler.homogeneous()) {
        // order-doubling check of the time quadrature at two probe frequencies
        PricingRequest fine = req;
        fine.time_quad_order = 2 * req.time_quad_order;
        TermSampler check(fine, e, hats);
        std::vector<std::vector<cplx>> a, b;
        for (double xr : {0.0, R / 3.0}) {
            sampler.sample({xr, contour}, a);
            check.sample({xr, contour}, b);
            for (std::size_t s = 0; s < H; ++s) {
                double scale = 0.0, diff = 0.0;
                for (std::size_t n = 0; n < N1; ++n) {
                    scale += std::abs(b[s][n]);
                    diff = std::max(diff, std::abs(a[s][n] - b[s][n]));
                }
                require(diff <= 1e-8 * scale || diff == 0.0, ErrorKind::Convergence,
                        "time quadrature did not converge at order " + std::to_string(req.time_quad_order) +
                            " (doubling moved a term by " + std::to_string(diff) + ")");
            }
        }
    }

    Inverted out;
    out.R = R;
    out.value.assign(static_cast<std::size_t>(max_power) + 1,
                     std::vector<std::vector<double>>(H, std::vector<double>(N1)));
    out.imag.assign(H, std::vector<double>(N1));
    std::vector<cplx> scaled(grid.size());
    for (int pw = 0; pw <= max_power; ++pw) {
        for (std::size_t s = 0; s < H; ++s) {
            for (std::size_t n = 0; n < N1; ++n) {
                for (std::size_t i = 0; i < grid.size(); ++i)
                    scaled[i] = samples[s][n][i] * std::pow(I * grid.xi(i), pw);
                const InverseResult r = inverse_sum(grid, scaled, req.x0, opt);
                out.value[static_cast<std::size_t>(pw)][s][n] = r.value;
                if (pw == 0) {
                    out.imag[s][n] = r.imag;
                    out.imag_warning = out.imag_warning || r.imag_warning;
                }
            }
        }
    }
    return out;
}

std::vector<HatJet> strike_hats(const PricingRequest& req) {
    std::vector<HatJet> hats;
    for (double k : req.strikes) {
        switch (req.payoff) {
            case PayoffKind::Call: hats.push_back(PayoffTransform::call(k).hat_jet()); break;
            case PayoffKind::Put: hats.push_back(PayoffTransform::put(k).hat_jet()); break;
            case PayoffKind::Delta: hats.push_back(PayoffTransform::delta(k).hat_jet()); break;
            case PayoffKind::Constant:
                fail(ErrorKind::Config, "constant payoffs are priced by bond_price");
        }
    }
    return hats;
}

double resolve_contour(const PricingRequest& req) {
    if (!std::isnan(req.contour)) return req.contour;
    switch (req.payoff) {
        case PayoffKind::Call: return PayoffTransform::call(0.0).default_contour();
        case PayoffKind::Put: return PayoffTransform::put(0.0).default_contour();
        default: return 0.0;
    }
}

void check_contour(const PricingRequest& req, const SymbolExpansion& e, double contour) {
    const Strip s = e.measure->strip();
    require(s.contains(contour), ErrorKind::Domain,
            "contour Im(xi) = " + std::to_string(contour) + " lies outside the jump transform strip " +
                s.describe());
    if (req.payoff == PayoffKind::Call || req.payoff == PayoffKind::Put) {
        const Strip p = req.payoff == PayoffKind::Call ? PayoffTransform::call(0).strip()
                                                       : PayoffTransform::put(0).strip();
        require(p.contains(contour), ErrorKind::Domain,
                to_string(req.payoff) + " contour Im(xi) = " + std::to_string(contour) +
                    " outside the payoff strip " + p.describe());
    }
}

PricingReport assemble(const PricingRequest& req, const Inverted& inv, double contour,
                       const std::vector<std::string>& warnings) {
    PricingReport rep;
    rep.R = inv.R;
    rep.contour = contour;
    rep.warnings = warnings;
    if (inv.imag_warning)
        rep.warnings.push_back("inverse transform has a non-negligible imaginary part "
                               "(conjugate symmetry violated)");
    for (std::size_t s = 0; s < req.strikes.size(); ++s) {
        PricingResult r;
        r.k = req.strikes[s];
        r.terms = inv.value[0][s];
        for (double v : r.terms) r.total += v;
        for (double v : inv.imag[s]) r.imag += v;
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

bool has_default(const ModelSpec& m) { return !m.gamma().is_zero(); }

}  // namespace

std::string to_string(EngineKind e) {
    switch (e) {
        case EngineKind::Auto: return "auto";
        case EngineKind::Homogeneous: return "homogeneous";
        case EngineKind::Inhomogeneous: return "inhomogeneous";
    }
    return "?";
}

EngineKind engine_kind_from_string(const std::string& s) {
    if (s == "auto") return EngineKind::Auto;
    if (s == "homogeneous") return EngineKind::Homogeneous;
    if (s == "inhomogeneous") return EngineKind::Inhomogeneous;
    fail(ErrorKind::Config, "unknown engine '" + s + "' (expected auto, homogeneous or inhomogeneous)");
}

SymbolExpansion request_expansion(const PricingRequest& req) {
    return build_expansion(req.model, req.basis, req.order, req.x0);
}

PricingReport price_transform(const PricingRequest& req, const std::vector<HatJet>& hats, double contour) {
    validate(req);
    const auto t0 = Clock::now();
    const SymbolExpansion e = request_expansion(req);
    require(e.measure->strip().contains(contour), ErrorKind::Domain,
            "contour lies outside the jump transform strip " + e.measure->strip().describe());
    const Inverted inv = invert_terms(req, e, hats, contour, 0);
    PricingRequest r = req;
    r.strikes.assign(hats.size(), 0.0);
    PricingReport rep = assemble(r, inv, contour, e.warnings);
    rep.elapsed = seconds_since(t0);
    return rep;
}

PricingReport price_option(const PricingRequest& req) {
    validate(req);
    const auto t0 = Clock::now();
    require(req.payoff != PayoffKind::Constant, ErrorKind::Config, "use bond_price for constant payoffs");
    const SymbolExpansion e = request_expansion(req);
    const double contour = resolve_contour(req);
    check_contour(req, e, contour);
    const Inverted inv = invert_terms(req, e, strike_hats(req), contour, 0);
    PricingReport rep = assemble(req, inv, contour, e.warnings);

    if (req.payoff == PayoffKind::Put && req.default_payment && has_default(req.model)) {
        // the strike is paid on default
        const BondResult bond = bond_price(req);
        for (auto& row : rep.rows) {
            const double K = std::exp(row.k);
            for (std::size_t n = 0; n < row.terms.size(); ++n)
                row.terms[n] += K * ((n == 0 ? 1.0 : 0.0) - bond.terms[n]);
            row.total = 0.0;
            for (double v : row.terms) row.total += v;
        }
    }
    if (req.implied_vol && req.payoff != PayoffKind::Delta) {
        for (auto& row : rep.rows) {
            try {
                row.iv = implied_vol(row.total, req.payoff == PayoffKind::Call, req.T - req.t, req.x0, row.k);
            } catch (const Error& err) {
                rep.warnings.push_back("k = " + std::to_string(row.k) + ": " + err.what());
            }
        }
    }
    rep.elapsed = seconds_since(t0);
    for (auto& row : rep.rows) row.elapsed = rep.elapsed / static_cast<double>(rep.rows.size());
    return rep;
}

PricingReport density(const PricingRequest& req, const std::vector<double>& ys, bool center_at_y) {
    PricingRequest r = req;
    r.payoff = PayoffKind::Delta;
    r.implied_vol = false;
    if (!center_at_y || req.basis.family != BasisFamily::Taylor) {
        r.strikes = ys;
        return price_option(r);
    }
    const auto t0 = Clock::now();
    PricingReport rep;
    for (double y : ys) {
        r.strikes = {y};
        r.basis.xbar = y;
        PricingReport one = price_option(r);
        rep.rows.push_back(one.rows.front());
        rep.R = std::max(rep.R, one.R);
        rep.contour = one.contour;
        for (auto& w : one.warnings) rep.warnings.push_back(w);
    }
    rep.elapsed = seconds_since(t0);
    return rep;
}

BondResult bond_price(const PricingRequest& req) {
    validate(req);
    const SymbolExpansion e = request_expansion(req);
    const int N = req.order;
    const cplx xi0 = 0.0;
    BondResult out;
    out.terms.assign(static_cast<std::size_t>(N) + 1, 0.0);

    // v_n = sum_j (-1)^j d^j/dxi^j [ e^{i xi x0} C_{n,j}(xi) ] at 0
    if (use_homogeneous(req, e)) {
        const int J = e.jet_budget(N);
        HomogeneousEngine engine(e, N, J);
        TermKernel k;
        ExpandWorkspace ws;
        engine.kernel(xi0, k, ws);
        const double tau = req.T - req.t;
        const CJet wave = exp(CJet::variable(xi0, J) * (I * req.x0));
        const CJet E = exp(k.phi0.truncated(J) * cplx(tau));
        for (int n = 0; n <= N; ++n) {
            const TermPolynomial& P = k.terms[static_cast<std::size_t>(n)];
            cplx v = 0.0;
            for (int j = 0; j <= P.jmax(); ++j) {
                CJet poly = CJet::constant(0.0, J);
                double tp = 1.0;
                for (int p = 0; p <= P.pmax(); ++p) {
                    if (P.live(p, j)) poly += P.at(p, j).truncated(J) * cplx(tp);
                    tp *= tau;
                }
                const CJet g = wave * E * poly;
                v += ((j % 2 == 0) ? 1.0 : -1.0) * g.derivative_value(j);
            }
            out.terms[static_cast<std::size_t>(n)] = v.real();
        }
    } else {
        const int J = e.jet_budget(N);
        const InhomogeneousEngine engine(e, N, req.t, req.T, req.time_quad_order, J);
        const auto C = engine.coefficient_jets(xi0);
        const CJet wave = exp(CJet::variable(xi0, J) * (I * req.x0));
        for (int n = 0; n <= N; ++n) {
            cplx v = 0.0;
            const auto& row = C[static_cast<std::size_t>(n)];
            for (std::size_t j = 0; j < row.size(); ++j)
                v += ((j % 2 == 0) ? 1.0 : -1.0) * (wave * row[j]).derivative_value(static_cast<int>(j));
            out.terms[static_cast<std::size_t>(n)] = v.real();
        }
    }
    // constant killing: v_0 = e^{-gamma tau} is exact
    if (req.model.gamma().is_constant()) std::fill(out.terms.begin() + 1, out.terms.end(), 0.0);
    for (double v : out.terms) out.value += v;
    require(out.value > 0.0, ErrorKind::Numeric,
            "survival value " + std::to_string(out.value) + " is not positive; credit spread undefined");
    out.spread = out.value == 1.0 ? 0.0 : -std::log(out.value) / (req.T - req.t);
    return out;
}

std::vector<Greeks> greeks(const PricingRequest& req) {
    validate(req);
    require(req.payoff != PayoffKind::Constant, ErrorKind::Config, "constant payoffs have no spot sensitivity");
    const SymbolExpansion e = request_expansion(req);
    const double contour = resolve_contour(req);
    check_contour(req, e, contour);
    const Inverted inv = invert_terms(req, e, strike_hats(req), contour, 2);
    const double S = std::exp(req.x0);
    std::vector<Greeks> out;
    for (std::size_t s = 0; s < req.strikes.size(); ++s) {
        double v = 0.0, dx = 0.0, dxx = 0.0;
        for (std::size_t n = 0; n < inv.value[0][s].size(); ++n) {
            v += inv.value[0][s][n];
            dx += inv.value[1][s][n];
            dxx += inv.value[2][s][n];
        }
        Greeks g;
        g.k = req.strikes[s];
        g.value = v;
        g.delta = dx / S;
        g.gamma = (dxx - dx) / (S * S);
        out.push_back(g);
    }
    return out;
}

}  // namespace levyx
