#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "levyx/jet.hpp"
#include "levyx/model.hpp"
#include "levyx/symbol.hpp"

namespace levyx {

/// Polynomial in x stored by monomial coefficients c[0] + c[1] x + ...
class BasisPolynomial {
public:
    BasisPolynomial() : c_{1.0} {}
    explicit BasisPolynomial(std::vector<double> coeffs);

    static BasisPolynomial constant(double v) { return BasisPolynomial({v}); }
    /// (x - r)
    static BasisPolynomial linear_root(double r) { return BasisPolynomial({-r, 1.0}); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coefficients() const noexcept { return c_; }
    double operator[](int m) const noexcept { return c_[static_cast<std::size_t>(m)]; }
    double operator()(double x) const noexcept;

    BasisPolynomial operator*(const BasisPolynomial& o) const;
    BasisPolynomial operator+(const BasisPolynomial& o) const;
    BasisPolynomial operator*(double s) const;
    BasisPolynomial pow(int n) const;
    /// p(x - s)
    BasisPolynomial shifted(double s) const;

private:
    void trim();
    std::vector<double> c_;
};

/// B(i d/dxi) applied to the function represented by g, at g's base point.
cplx apply_basis_operator(const BasisPolynomial& b, const CJet& g);

enum class BasisFamily { Taylor, TwoPoint, Hermite };

std::string to_string(BasisFamily f);
BasisFamily basis_family_from_string(const std::string& s);

/// User-level basis choice; NaN fields take their documented defaults
/// relative to the spot x0.
struct BasisSpec {
    BasisFamily family = BasisFamily::Taylor;
    double xbar = std::numeric_limits<double>::quiet_NaN();  // Taylor / Hermite center
    double delta = 0.5;                                       // two-point half width
    double x1 = std::numeric_limits<double>::quiet_NaN();
    double x2 = std::numeric_limits<double>::quiet_NaN();
    double shift = std::numeric_limits<double>::quiet_NaN();  // two-point M, default f(x0)
    int quad_order = 0;                                       // Hermite; 0 means 64
    bool finite_differences = false;  // allow derivative estimates for opaque coefficients
};

/// Ordered pairs (B_n, phi_n), n = 0..N, with B_0 = 1.
class SymbolExpansion {
public:
    BasisFamily family = BasisFamily::Taylor;
    int order = 0;
    double xbar = 0.0;                    // Taylor / Hermite center
    double x1 = 0.0, x2 = 0.0, shift = 0.0;  // two-point parameters
    int quad_order = 0;
    std::vector<BasisPolynomial> basis;
    std::shared_ptr<const LevyMeasure> measure;
    bool time_homogeneous = true;
    std::vector<FrozenCoeffs> constant_coeffs;
    std::function<std::vector<FrozenCoeffs>(double)> coeff_fn;
    std::vector<std::string> warnings;

    /// Frozen coefficients of all orders at time t.
    std::vector<FrozenCoeffs> coefficients(double t) const;
    FrozenSymbol frozen(int n) const;

    /// Jet order needed to evaluate the order-n term.
    int jet_budget(int n) const;

    /// sum_{n<=upto} B_n(x) * coefficients_n(t): reconstruction of
    /// (gamma, a, multiplier) at x.
    FrozenCoeffs reconstruct(double t, double x, int upto) const;
};

SymbolExpansion taylor_expand(const ModelSpec& model, double xbar, int N,
                              bool finite_differences = false);
SymbolExpansion two_point_taylor_expand(const ModelSpec& model, double x1, double x2, double shift,
                                        int N);
SymbolExpansion hermite_expand(const ModelSpec& model, double xbar, int N, int quad_order);

/// Dispatch on `spec`, resolving defaults against the spot x0.
SymbolExpansion build_expansion(const ModelSpec& model, const BasisSpec& spec, int N, double x0);

/// Two-point coefficient c_n(x1, x2) of a function with derivative
/// values d1[j] = f^(j)(x1), d2[j] = f^(j)(x2).
double two_point_coefficient(int n, double x1, double x2, const std::vector<double>& d1,
                             const std::vector<double>& d2);

/// Orthonormal Hermite polynomial of degree n in u (weight e^{-u^2}),
/// with the sign convention d^n e^{-u^2} / e^{-u^2}.
BasisPolynomial hermite_polynomial(int n);

}  // namespace levyx
