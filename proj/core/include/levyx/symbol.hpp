#pragma once

#include <functional>
#include <memory>

#include "levyx/jet.hpp"
#include "levyx/levy_measure.hpp"

namespace levyx {

/// Coefficients (gamma_n, a_n, multiplier_n) of one frozen symbol.
struct FrozenCoeffs {
    double gamma = 0.0;
    double a = 0.0;
    double jump = 0.0;

    FrozenCoeffs& operator+=(const FrozenCoeffs& o) {
        gamma += o.gamma;
        a += o.a;
        jump += o.jump;
        return *this;
    }
    friend FrozenCoeffs operator*(double s, FrozenCoeffs c) { return {s * c.gamma, s * c.a, s * c.jump}; }
};

/// The three xi-dependent building blocks of every frozen symbol:
///   phi_n = gamma_n * e_gamma + a_n * e_a + jump_n * e_jump.
struct SymbolBlocks {
    cplx e_gamma, e_a, e_jump;

    cplx combine(const FrozenCoeffs& c) const noexcept {
        return c.gamma * e_gamma + c.a * e_a + c.jump * e_jump;
    }
};

struct SymbolBlockJets {
    CJet e_gamma, e_a, e_jump;

    CJet combine(const FrozenCoeffs& c) const {
        CJet r = e_gamma * cplx(c.gamma);
        r += e_a * cplx(c.a);
        r += e_jump * cplx(c.jump);
        return r;
    }
};

SymbolBlocks symbol_blocks(const LevyMeasure& measure, cplx xi);
SymbolBlockJets symbol_block_jets(const LevyMeasure& measure, cplx xi0, int order);

/// x-independent symbol phi_n(t, xi) attached to one basis function.
class FrozenSymbol {
public:
    FrozenSymbol(std::function<FrozenCoeffs(double)> coeffs,
                 std::shared_ptr<const LevyMeasure> measure);
    FrozenSymbol(FrozenCoeffs constant, std::shared_ptr<const LevyMeasure> measure);

    FrozenCoeffs coefficients(double t) const { return coeffs_(t); }
    const LevyMeasure& measure() const noexcept { return *measure_; }

private:
    std::function<FrozenCoeffs(double)> coeffs_;
    std::shared_ptr<const LevyMeasure> measure_;
};

/// phi_n(t, xi); raises a domain error outside the jump transform strip.
cplx symbol_eval(const FrozenSymbol& frozen, double t, cplx xi);

}  // namespace levyx
