#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "levyx/expression.hpp"
#include "levyx/jet.hpp"

namespace levyx {

/// A scalar coefficient c(t, x) with access to its x-Taylor coefficients.
///
/// Four sources are supported: constants, c*exp(k*x) profiles (exact and
/// fast), parsed expressions (exact derivatives through jets) and opaque
/// callables (derivatives by central finite differences).
class CoefficientField {
public:
    CoefficientField() = default;  // identically zero

    static CoefficientField constant(double c);
    static CoefficientField exponential(double c, double k);
    static CoefficientField from_expression(const std::string& text,
                                            const std::map<std::string, double>& params = {});
    static CoefficientField from_function(std::function<double(double, double)> f,
                                          bool depends_on_t = true);

    double operator()(double t, double x) const;

    /// Jet in x of order `order` at (t, x): entry j is d^j c / dx^j / j!.
    RJet taylor(double t, double x, int order) const;

    bool depends_on_t() const noexcept { return depends_on_t_; }
    bool is_zero() const noexcept { return kind_ == Kind::Constant && c_ == 0.0; }
    bool is_constant() const noexcept { return kind_ == Kind::Constant; }
    bool has_exact_derivatives() const noexcept { return kind_ != Kind::Function; }

    /// Copy multiplied by s (derivatives scale alike).
    CoefficientField scaled(double s) const;

    /// If the field is c*exp(k*x) (constants have k = 0), report (c, k).
    bool as_exponential(double& c, double& k) const noexcept;

    std::string describe() const;

private:
    enum class Kind { Constant, Exponential, Expression, Function };
    Kind kind_ = Kind::Constant;
    double c_ = 0.0;
    double k_ = 0.0;
    std::shared_ptr<const Expression> expr_;
    std::shared_ptr<const std::function<double(double, double)>> fn_;
    bool depends_on_t_ = false;
    double scale_ = 1.0;  // applied to expression and function sources
};

/// Central finite-difference Taylor coefficients of f around x (order <= 8).
RJet finite_difference_taylor(const std::function<double(double)>& f, double x, int order);

}  // namespace levyx
