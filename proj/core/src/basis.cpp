#include "levyx/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levyx/error.hpp"
#include "levyx/quadrature.hpp"

namespace levyx {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void require_exact_derivatives(const ModelSpec& model, bool finite_differences) {
    if (model.has_exact_derivatives() || finite_differences) return;
    fail(ErrorKind::Config,
         "model coefficients have no derivative evaluators; supply expressions or enable "
         "finite-difference derivatives");
}

std::vector<std::string> inherited_warnings(const ModelSpec& model) { return model.warnings(); }

}  // namespace

BasisPolynomial::BasisPolynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_ = {0.0};
    trim();
}

void BasisPolynomial::trim() {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double BasisPolynomial::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BasisPolynomial BasisPolynomial::operator*(const BasisPolynomial& o) const {
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return BasisPolynomial(std::move(r));
}

BasisPolynomial BasisPolynomial::operator+(const BasisPolynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return BasisPolynomial(std::move(r));
}

BasisPolynomial BasisPolynomial::operator*(double s) const {
    std::vector<double> r = c_;
    for (double& v : r) v *= s;
    return BasisPolynomial(std::move(r));
}

BasisPolynomial BasisPolynomial::pow(int n) const {
    BasisPolynomial r = constant(1.0);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

BasisPolynomial BasisPolynomial::shifted(double s) const {
    // Horner in terms of (x - s)
    BasisPolynomial r = constant(0.0);
    const BasisPolynomial u = linear_root(s);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * u + constant(*it);
    return r;
}

cplx apply_basis_operator(const BasisPolynomial& b, const CJet& g) {
    require(g.order() >= b.degree(), ErrorKind::Budget,
            "basis operator of degree " + std::to_string(b.degree()) + " needs a jet of order >= " +
                std::to_string(b.degree()) + ", got " + std::to_string(g.order()));
    cplx acc = 0.0;
    cplx ipow = 1.0;
    for (int m = 0; m <= b.degree(); ++m) {
        if (b[m] != 0.0) acc += b[m] * ipow * g.derivative_value(m);
        ipow *= cplx(0.0, 1.0);
    }
    return acc;
}

std::string to_string(BasisFamily f) {
    switch (f) {
        case BasisFamily::Taylor: return "taylor";
        case BasisFamily::TwoPoint: return "two-point";
        case BasisFamily::Hermite: return "hermite";
    }
    return "?";
}

BasisFamily basis_family_from_string(const std::string& s) {
    if (s == "taylor") return BasisFamily::Taylor;
    if (s == "two-point" || s == "twopoint" || s == "two_point") return BasisFamily::TwoPoint;
    if (s == "hermite") return BasisFamily::Hermite;
    fail(ErrorKind::Config, "unknown basis '" + s + "' (expected taylor, two-point or hermite)");
}

std::vector<FrozenCoeffs> SymbolExpansion::coefficients(double t) const {
    if (time_homogeneous) return constant_coeffs;
    return coeff_fn(t);
}

FrozenSymbol SymbolExpansion::frozen(int n) const {
    require(n >= 0 && n <= order, ErrorKind::Config, "frozen symbol index out of range");
    if (time_homogeneous) return FrozenSymbol(constant_coeffs[static_cast<std::size_t>(n)], measure);
    auto fn = coeff_fn;
    return FrozenSymbol([fn, n](double t) { return fn(t)[static_cast<std::size_t>(n)]; }, measure);
}

int SymbolExpansion::jet_budget(int n) const {
    std::vector<int> K(static_cast<std::size_t>(n) + 1, 0);
    for (int m = 1; m <= n; ++m)
        for (int k = 1; k <= m; ++k)
            K[m] = std::max(K[m], basis[static_cast<std::size_t>(k)].degree() + K[m - k]);
    return K[static_cast<std::size_t>(n)];
}

FrozenCoeffs SymbolExpansion::reconstruct(double t, double x, int upto) const {
    const auto c = coefficients(t);
    FrozenCoeffs r;
    for (int n = 0; n <= std::min(upto, order); ++n)
        r += basis[static_cast<std::size_t>(n)](x) * c[static_cast<std::size_t>(n)];
    return r;
}

SymbolExpansion taylor_expand(const ModelSpec& model, double xbar, int N, bool finite_differences) {
    require(N >= 0, ErrorKind::Config, "expansion order must be nonnegative");
    require(N <= kMaxJetOrder, ErrorKind::Budget,
            "Taylor order " + std::to_string(N) + " exceeds the jet capacity " +
                std::to_string(kMaxJetOrder));
    require_exact_derivatives(model, finite_differences);

    SymbolExpansion e;
    e.family = BasisFamily::Taylor;
    e.order = N;
    e.xbar = xbar;
    e.measure = model.measure_ptr();
    e.time_homogeneous = model.time_homogeneous();
    e.warnings = inherited_warnings(model);
    for (int n = 0; n <= N; ++n) e.basis.push_back(BasisPolynomial::linear_root(xbar).pow(n));

    const bool jumps = !model.measure().is_zero();
    const CoefficientField a = model.a(), g = model.gamma(), m = model.multiplier();
    auto coeffs = [a, g, m, xbar, N, jumps](double t) {
        const RJet ja = a.taylor(t, xbar, N), jg = g.taylor(t, xbar, N);
        const RJet jm = jumps ? m.taylor(t, xbar, N) : RJet::constant(0.0, N);
        std::vector<FrozenCoeffs> out(static_cast<std::size_t>(N) + 1);
        for (int n = 0; n <= N; ++n) out[static_cast<std::size_t>(n)] = {jg[n], ja[n], jm[n]};
        return out;
    };
    if (e.time_homogeneous) e.constant_coeffs = coeffs(0.0);
    else e.coeff_fn = coeffs;
    return e;
}

double two_point_coefficient(int n, double x1, double x2, const std::vector<double>& d1,
                             const std::vector<double>& d2) {
    require(x1 != x2, ErrorKind::Config, "two-point expansion needs distinct points");
    if (n == 0) return d2[0] / (x2 - x1);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double w = factorial(k + n - 1) / (factorial(k) * factorial(n) * factorial(n - k));
        const double sk = (k % 2 == 0) ? 1.0 : -1.0;
        const double sn = ((n + 1) % 2 == 0) ? 1.0 : -1.0;
        const auto j = static_cast<std::size_t>(n - k);
        acc += w * (sk * k * d1[j] + sn * n * d2[j]) / std::pow(x1 - x2, k + n + 1);
    }
    return acc;
}

SymbolExpansion two_point_taylor_expand(const ModelSpec& model, double x1, double x2, double shift,
                                        int N) {
    require(N >= 0, ErrorKind::Config, "expansion order must be nonnegative");
    require(x1 < x2, ErrorKind::Config,
            "two-point expansion needs x1 < x2 (the points coincide or are swapped)");
    require(N == 0 || 2 * N - 1 <= kMaxJetOrder, ErrorKind::Budget,
            "two-point order " + std::to_string(N) + " needs jets of order " +
                std::to_string(2 * N - 1) + " > " + std::to_string(kMaxJetOrder));
    const auto form = model.proportional_form();
    require(form.has_value(), ErrorKind::Unsupported,
            "two-point expansion requires coefficients proportional to one profile f(x); "
            "the general case is not implemented");
    require(form->f.has_exact_derivatives(), ErrorKind::Config,
            "two-point expansion needs derivative evaluators for the profile f");

    SymbolExpansion e;
    e.family = BasisFamily::TwoPoint;
    e.order = N;
    e.x1 = x1;
    e.x2 = x2;
    e.shift = shift;
    e.xbar = 0.5 * (x1 + x2);
    e.measure = model.measure_ptr();
    e.warnings = inherited_warnings(model);

    // derivatives of F = f - M at both points
    const int nd = std::max(N - 1, 0);
    const RJet j1 = form->f.taylor(0.0, x1, nd), j2 = form->f.taylor(0.0, x2, nd);
    std::vector<double> d1(static_cast<std::size_t>(nd) + 1), d2(d1.size());
    for (int j = 0; j <= nd; ++j) {
        d1[static_cast<std::size_t>(j)] = j1.derivative_value(j);
        d2[static_cast<std::size_t>(j)] = j2.derivative_value(j);
    }
    d1[0] -= shift;
    d2[0] -= shift;

    e.basis.push_back(BasisPolynomial::constant(1.0));
    const BasisPolynomial l1 = BasisPolynomial::linear_root(x1), l2 = BasisPolynomial::linear_root(x2);
    for (int n = 1; n <= N; ++n) {
        const double c12 = two_point_coefficient(n - 1, x1, x2, d1, d2);
        const double c21 = two_point_coefficient(n - 1, x2, x1, d2, d1);
        e.basis.push_back((l1 * c12 + l2 * c21) * (l1 * l2).pow(n - 1));
    }

    const bool jumps = !model.measure().is_zero();
    const CoefficientField A = form->A, G = form->Gamma, C = form->C;
    e.time_homogeneous = !A.depends_on_t() && !G.depends_on_t() && !C.depends_on_t();
    auto coeffs = [A, G, C, shift, N, jumps](double t) {
        const FrozenCoeffs phi{G(t, 0.0), A(t, 0.0), jumps ? C(t, 0.0) : 0.0};
        std::vector<FrozenCoeffs> out(static_cast<std::size_t>(N) + 1, phi);
        out[0] = shift * phi;
        return out;
    };
    if (e.time_homogeneous) e.constant_coeffs = coeffs(0.0);
    else e.coeff_fn = coeffs;
    return e;
}

BasisPolynomial hermite_polynomial(int n) {
    // g_{k+1} = -sqrt(2/(k+1)) u g_k - sqrt(k/(k+1)) g_{k-1}
    const BasisPolynomial u({0.0, 1.0});
    BasisPolynomial prev = BasisPolynomial::constant(0.0);
    BasisPolynomial cur = BasisPolynomial::constant(std::pow(std::numbers::pi, -0.25));
    for (int k = 0; k < n; ++k) {
        BasisPolynomial next = u * cur * -std::sqrt(2.0 / (k + 1)) + prev * -std::sqrt(static_cast<double>(k) / (k + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

SymbolExpansion hermite_expand(const ModelSpec& model, double xbar, int N, int quad_order) {
    require(N >= 0, ErrorKind::Config, "expansion order must be nonnegative");
    require(N <= kMaxJetOrder, ErrorKind::Budget, "Hermite order exceeds the jet capacity");
    require(quad_order >= N + 1, ErrorKind::Config,
            "Hermite quadrature order " + std::to_string(quad_order) + " < N + 1 = " +
                std::to_string(N + 1) + " is not exact enough");

    SymbolExpansion e;
    e.family = BasisFamily::Hermite;
    e.order = N;
    e.xbar = xbar;
    e.quad_order = quad_order;
    e.measure = model.measure_ptr();
    e.time_homogeneous = model.time_homogeneous();
    e.warnings = inherited_warnings(model);

    std::vector<BasisPolynomial> h;
    for (int n = 0; n <= N; ++n) h.push_back(hermite_polynomial(n).shifted(xbar));
    const double h0 = h[0][0];
    e.basis = h;
    e.basis[0] = BasisPolynomial::constant(1.0);  // H_0 folded into phi_0

    const QuadratureRule rule = gauss_hermite(quad_order, xbar);
    std::vector<std::vector<double>> hv(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        for (double x : rule.nodes) hv[static_cast<std::size_t>(n)].push_back(h[static_cast<std::size_t>(n)](x));

    const bool jumps = !model.measure().is_zero();
    const CoefficientField a = model.a(), g = model.gamma(), m = model.multiplier();
    auto coeffs = [a, g, m, rule, hv, h0, N, jumps](double t) {
        std::vector<FrozenCoeffs> out(static_cast<std::size_t>(N) + 1);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double x = rule.nodes[i];
            const FrozenCoeffs v{g(t, x), a(t, x), jumps ? m(t, x) : 0.0};
            for (int n = 0; n <= N; ++n)
                out[static_cast<std::size_t>(n)] += (rule.weights[i] * hv[static_cast<std::size_t>(n)][i]) * v;
        }
        out[0] = h0 * out[0];
        for (const auto& c : out)
            require(std::isfinite(c.a) && std::isfinite(c.gamma) && std::isfinite(c.jump),
                    ErrorKind::Domain,
                    "coefficients are not square integrable under the Hermite weight");
        return out;
    };
    if (e.time_homogeneous) e.constant_coeffs = coeffs(0.0);
    else e.coeff_fn = coeffs;
    return e;
}

SymbolExpansion build_expansion(const ModelSpec& model, const BasisSpec& spec, int N, double x0) {
    switch (spec.family) {
        case BasisFamily::Taylor:
            return taylor_expand(model, std::isnan(spec.xbar) ? x0 : spec.xbar, N,
                                 spec.finite_differences);
        case BasisFamily::TwoPoint: {
            const double x1 = std::isnan(spec.x1) ? x0 - spec.delta : spec.x1;
            const double x2 = std::isnan(spec.x2) ? x0 + spec.delta : spec.x2;
            double shift = spec.shift;
            if (std::isnan(shift)) {
                const auto form = model.proportional_form();
                require(form.has_value(), ErrorKind::Unsupported,
                        "two-point expansion requires coefficients proportional to one profile f(x)");
                shift = form->f(0.0, x0);
            }
            return two_point_taylor_expand(model, x1, x2, shift, N);
        }
        case BasisFamily::Hermite:
            return hermite_expand(model, std::isnan(spec.xbar) ? x0 : spec.xbar, N,
                                  spec.quad_order > 0 ? spec.quad_order : 64);
    }
    fail(ErrorKind::Config, "unknown basis family");
}

}  // namespace levyx
