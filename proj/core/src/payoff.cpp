#include "levyx/payoff.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "levyx/error.hpp"

namespace levyx {

namespace {
constexpr cplx I{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
}  // namespace

std::string to_string(PayoffKind k) {
    switch (k) {
        case PayoffKind::Call: return "call";
        case PayoffKind::Put: return "put";
        case PayoffKind::Delta: return "delta";
        case PayoffKind::Constant: return "bond";
    }
    return "?";
}

PayoffKind payoff_kind_from_string(const std::string& s) {
    if (s == "call") return PayoffKind::Call;
    if (s == "put") return PayoffKind::Put;
    if (s == "delta" || s == "density") return PayoffKind::Delta;
    if (s == "bond" || s == "constant") return PayoffKind::Constant;
    fail(ErrorKind::Config, "unknown payoff '" + s + "' (expected call, put, delta or bond)");
}

PayoffTransform PayoffTransform::call(double k) {
    PayoffTransform p;
    p.kind_ = PayoffKind::Call;
    p.param_ = k;
    return p;
}

PayoffTransform PayoffTransform::put(double k) {
    PayoffTransform p;
    p.kind_ = PayoffKind::Put;
    p.param_ = k;
    return p;
}

PayoffTransform PayoffTransform::delta(double y) {
    PayoffTransform p;
    p.kind_ = PayoffKind::Delta;
    p.param_ = y;
    return p;
}

PayoffTransform PayoffTransform::constant(double c) {
    PayoffTransform p;
    p.kind_ = PayoffKind::Constant;
    p.param_ = c;
    return p;
}

Strip PayoffTransform::strip() const {
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
        case PayoffKind::Call: return {-inf, -1.0};
        case PayoffKind::Put: return {0.0, inf};
        case PayoffKind::Delta: return {-inf, inf};
        case PayoffKind::Constant: return {0.0, 0.0};
    }
    return {};
}

double PayoffTransform::default_contour() const {
    switch (kind_) {
        case PayoffKind::Call: return -1.5;
        case PayoffKind::Put: return 0.5;
        default: return 0.0;
    }
}

double PayoffTransform::payoff(double x) const {
    switch (kind_) {
        case PayoffKind::Call: return std::max(std::exp(x) - std::exp(param_), 0.0);
        case PayoffKind::Put: return std::max(std::exp(param_) - std::exp(x), 0.0);
        case PayoffKind::Delta: return x == param_ ? std::numeric_limits<double>::infinity() : 0.0;
        case PayoffKind::Constant: return param_;
    }
    return 0.0;
}

void PayoffTransform::check(cplx xi) const {
    require(kind_ != PayoffKind::Constant, ErrorKind::Unsupported,
            "a constant payoff has a point-mass transform; use the bond pricing path");
    const Strip s = strip();
    if (!s.contains(xi.imag())) {
        std::ostringstream os;
        os << to_string(kind_) << " transform needs " << s.describe() << ", got Im(xi) = " << xi.imag();
        fail(ErrorKind::Domain, os.str());
    }
}

CJet rational_payoff_jet(double k, double sign, cplx xi0, int order) {
    const CJet x = CJet::variable(xi0, order);
    const CJet num = exp(x * cplx(0.0, -k) + cplx(k));
    const CJet den = x * I + x * x;
    return num / den * cplx(sign * kInvSqrt2Pi);
}

cplx PayoffTransform::eval(cplx xi) const {
    check(xi);
    switch (kind_) {
        case PayoffKind::Call:
        case PayoffKind::Put:
            return -std::exp(param_ - I * param_ * xi) * kInvSqrt2Pi / (I * xi + xi * xi);
        case PayoffKind::Delta: return std::exp(-I * xi * param_) * kInvSqrt2Pi;
        case PayoffKind::Constant: break;
    }
    return 0.0;
}

CJet PayoffTransform::jet(cplx xi0, int order) const {
    check(xi0);
    switch (kind_) {
        case PayoffKind::Call:
        case PayoffKind::Put: return rational_payoff_jet(param_, -1.0, xi0, order);
        case PayoffKind::Delta: {
            const CJet x = CJet::variable(xi0, order);
            return exp(x * cplx(0.0, -param_)) * cplx(kInvSqrt2Pi);
        }
        case PayoffKind::Constant: break;
    }
    return CJet::constant(0.0, order);
}

HatJet PayoffTransform::hat_jet() const {
    const PayoffTransform self = *this;
    return [self](cplx xi0, int order) { return self.jet(xi0, order); };
}

}  // namespace levyx
