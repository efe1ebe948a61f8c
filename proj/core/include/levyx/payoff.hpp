#pragma once

#include <string>

#include "levyx/expand.hpp"
#include "levyx/levy_measure.hpp"

namespace levyx {

enum class PayoffKind { Call, Put, Delta, Constant };

std::string to_string(PayoffKind k);
PayoffKind payoff_kind_from_string(const std::string& s);

/// European payoff in log-price together with its generalized transform
///   h^(xi) = (2 pi)^{-1/2} int e^{-i xi x} h(x) dx.
class PayoffTransform {
public:
    static PayoffTransform call(double log_strike);
    static PayoffTransform put(double log_strike);
    static PayoffTransform delta(double y);
    static PayoffTransform constant(double c);

    PayoffKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return param_; }

    /// Strip of admissible Im(xi).
    Strip strip() const;
    /// Default contour Im(xi).
    double default_contour() const;

    /// h(x) itself.
    double payoff(double x) const;
    cplx eval(cplx xi) const;
    CJet jet(cplx xi0, int order) const;
    HatJet hat_jet() const;

private:
    void check(cplx xi) const;

    PayoffKind kind_ = PayoffKind::Call;
    double param_ = 0.0;
};

/// Transform of e^{k - i k xi} / (i xi + xi^2) scaled by `sign / sqrt(2 pi)`:
/// the rational family shared by calls, puts and -min(e^x, e^k).
CJet rational_payoff_jet(double log_strike, double sign, cplx xi0, int order);

}  // namespace levyx
