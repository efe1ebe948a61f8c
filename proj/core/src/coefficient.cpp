#include "levyx/coefficient.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "levyx/error.hpp"

namespace levyx {

CoefficientField CoefficientField::constant(double c) {
    CoefficientField f;
    f.kind_ = Kind::Constant;
    f.c_ = c;
    return f;
}

CoefficientField CoefficientField::exponential(double c, double k) {
    if (k == 0.0) return constant(c);
    CoefficientField f;
    f.kind_ = Kind::Exponential;
    f.c_ = c;
    f.k_ = k;
    return f;
}

CoefficientField CoefficientField::from_expression(const std::string& text,
                                                   const std::map<std::string, double>& params) {
    auto expr = std::make_shared<Expression>(Expression::parse(text, {"t", "x"}, params));
    if (expr->is_constant()) return constant(expr->eval({0.0, 0.0}));
    CoefficientField f;
    f.kind_ = Kind::Expression;
    f.depends_on_t_ = expr->depends_on("t");
    f.expr_ = std::move(expr);
    return f;
}

CoefficientField CoefficientField::from_function(std::function<double(double, double)> fn,
                                                 bool depends_on_t) {
    CoefficientField f;
    f.kind_ = Kind::Function;
    f.fn_ = std::make_shared<const std::function<double(double, double)>>(std::move(fn));
    f.depends_on_t_ = depends_on_t;
    return f;
}

double CoefficientField::operator()(double t, double x) const {
    switch (kind_) {
        case Kind::Constant: return c_;
        case Kind::Exponential: return c_ * std::exp(k_ * x);
        case Kind::Expression: return scale_ * expr_->eval({t, x});
        case Kind::Function: return scale_ * (*fn_)(t, x);
    }
    return 0.0;
}

RJet CoefficientField::taylor(double t, double x, int order) const {
    switch (kind_) {
        case Kind::Constant: return RJet::constant(c_, order);
        case Kind::Exponential: {
            RJet j(order);
            double term = c_ * std::exp(k_ * x);
            for (int n = 0; n <= order; ++n) {
                j[n] = term;
                term *= k_ / (n + 1);
            }
            return j;
        }
        case Kind::Expression: return expr_->eval_jet({t, x}, 1, order) * scale_;
        case Kind::Function:
            return finite_difference_taylor([&](double y) { return (*fn_)(t, y); }, x, order) *
                   scale_;
    }
    return RJet::constant(0.0, order);
}

CoefficientField CoefficientField::scaled(double s) const {
    CoefficientField f = *this;
    if (kind_ == Kind::Constant || kind_ == Kind::Exponential) f.c_ *= s;
    else f.scale_ *= s;
    return f;
}

bool CoefficientField::as_exponential(double& c, double& k) const noexcept {
    if (kind_ == Kind::Constant || kind_ == Kind::Exponential) {
        c = c_;
        k = k_;
        return true;
    }
    return false;
}

std::string CoefficientField::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::Constant: os << c_; break;
        case Kind::Exponential: os << c_ << "*exp(" << k_ << "*x)"; break;
        case Kind::Expression:
            if (scale_ != 1.0) os << scale_ << "*";
            os << "(" << expr_->text() << ")";
            break;
        case Kind::Function: os << "<function>"; break;
    }
    return os.str();
}

RJet finite_difference_taylor(const std::function<double(double)>& f, double x, int order) {
    require(order <= 8, ErrorKind::Budget,
            "finite-difference derivatives are limited to order 8; supply an expression instead");
    RJet j(order);
    j[0] = f(x);
    const double eps = std::numeric_limits<double>::epsilon();
    double fact = 1.0;
    for (int n = 1; n <= order; ++n) {
        fact *= n;
        const double h = std::pow(eps, 1.0 / (n + 2)) * std::max(1.0, std::abs(x));
        // n-th central difference
        double acc = 0.0;
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sgn * binom * f(x + (0.5 * n - k) * h);
            binom = binom * (n - k) / (k + 1);
        }
        j[n] = acc / std::pow(h, n) / fact;
    }
    return j;
}

}  // namespace levyx
