#include "levyx/bounds.hpp"

#include <cmath>
#include <numbers>

#include "levyx/error.hpp"
#include "levyx/quadrature.hpp"

namespace levyx {

namespace {

void check_window(double t, double T, const BoundParams& p) {
    require(t < T, ErrorKind::Config, "bound kernels need t < T");
    require(p.M > 0.0, ErrorKind::Config, "dominating constant M must be positive");
}

double gaussian_term(double d, double var) {
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

}  // namespace

double convolved_kernel(int k, double t, double x, double T, double y, const BoundParams& p) {
    check_window(t, T, p);
    require(k >= 0, ErrorKind::Config, "convolution power must be nonnegative");
    const double tau = T - t, lam = p.M * tau;
    double weight = std::exp(-lam), acc = 0.0;
    for (int n = 0; n < p.max_terms; ++n) {
        if (n > 0) weight *= lam / n;
        const double v = p.M * (tau + n + k);
        acc += weight * gaussian_term(x - y + p.M * (n + k), v);
        if (n > lam && weight < p.series_tol) break;
    }
    return acc;
}

double gamma_tilde(double t, double x, double T, double y, const BoundParams& p) {
    check_window(t, T, p);
    const double tau = T - t, lam = p.M * tau, root = std::sqrt(lam);
    double acc = 0.0;
    double wk = 1.0;  // lam^{k/2} / sqrt(k!)
    for (int k = 0; k < p.max_terms; ++k) {
        if (k > 0) wk *= root / std::sqrt(static_cast<double>(k));
        double wn = std::exp(-lam), inner = 0.0;
        for (int n = 0; n < p.max_terms; ++n) {
            if (n > 0) wn *= lam / n;
            inner += wn * gaussian_term(x - y + p.M * (n + k + 1), p.M * (tau + n + k + 1));
            if (n > lam && wn < p.series_tol) break;
        }
        acc += wk * inner;
        if (k > lam && wk < p.series_tol) break;
    }
    return acc;
}

double gamma_tilde_from_kernels(double t, double x, double T, double y, const BoundParams& p) {
    check_window(t, T, p);
    const double lam = p.M * (T - t), root = std::sqrt(lam);
    double acc = 0.0, wk = 1.0;
    for (int k = 0; k < p.max_terms; ++k) {
        if (k > 0) wk *= root / std::sqrt(static_cast<double>(k));
        acc += wk * convolved_kernel(k + 1, t, x, T, y, p);
        if (k > lam && wk < p.series_tol) break;
    }
    return acc;
}

EnvelopeTerms density_error_envelope(double t, double x, double T, double y, const BoundParams& p,
                                     double dnu_norm, double C) {
    require(C > 0.0, ErrorKind::Config, "envelope constant C must be positive");
    require(dnu_norm >= 0.0, ErrorKind::Config, "||d_x nu|| must be nonnegative");
    EnvelopeTerms e;
    e.gamma_bar = gamma_bar(t, x, T, y, p);
    e.gamma_tilde = gamma_tilde(t, x, T, y, p);
    e.value = C * (T - t) * (e.gamma_bar + dnu_norm * e.gamma_tilde);
    return e;
}

double price_error_envelope(const std::function<double(double)>& h, double t, double x, double T,
                            const BoundParams& p, double dnu_norm, double C) {
    auto f = [&](double y) {
        return std::abs(h(y)) * density_error_envelope(t, x, T, y, p, dnu_norm, C).value;
    };
    // the kernels drift by about M per unit time plus jumps; integrate generously
    const double spread = 12.0 * std::sqrt(p.M * (T - t + 1.0)) + p.M * (p.M * (T - t) + 4.0);
    return integrate_adaptive(f, x - spread, x + p.M + spread, 1e-10);
}

double semigroup_check(int k, int N, double t, double s, double T, double x, double y,
                       const BoundParams& p) {
    require(t < s && s < T, ErrorKind::Config, "semigroup check needs t < s < T");
    auto f = [&](double z) {
        return convolved_kernel(k, t, x, s, z, p) * convolved_kernel(N, s, z, T, y, p);
    };
    const double left = integrate_adaptive(f, -std::numeric_limits<double>::infinity(), y, 1e-12);
    const double right = integrate_adaptive(f, y, std::numeric_limits<double>::infinity(), 1e-12);
    return std::abs(left + right - convolved_kernel(k + N, t, x, T, y, p));
}

ModelBoundInputs bound_inputs(const ModelSpec& model, const ModelDomain& box, int grid) {
    const LevyMeasure& nu = model.measure();
    require(nu.is_zero() || nu.kind() == LevyMeasure::Kind::Gaussian, ErrorKind::Unsupported,
            "error envelopes assume Gaussian jumps; the model uses " + nu.describe());
    const GaussianJumps g = nu.is_zero() ? GaussianJumps{0.0, 0.0, 1.0} : nu.gaussian_params();
    double sup = 0.0, dnu = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = box.t_lo + (box.t_hi - box.t_lo) * i / std::max(grid - 1, 1);
        for (int j = 0; j < grid; ++j) {
            const double x = box.x_lo + (box.x_hi - box.x_lo) * j / std::max(grid - 1, 1);
            const double a = model.a()(t, x), gam = model.gamma()(t, x);
            const RJet m = model.multiplier().taylor(t, x, 1);
            const double lambda = g.lambda * m[0];
            sup = std::max({sup, 2.0 * a, gam, lambda, g.stdev * g.stdev, std::abs(g.mean)});
            dnu = std::max(dnu, std::abs(g.lambda * m[1]));
        }
    }
    ModelBoundInputs out;
    out.params.M = 1.1 * sup;
    out.dnu_norm = dnu;
    return out;
}

}  // namespace levyx
