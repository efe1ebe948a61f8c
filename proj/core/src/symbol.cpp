#include "levyx/symbol.hpp"

#include <utility>

namespace levyx {

namespace {
constexpr cplx I{0.0, 1.0};
}

SymbolBlocks symbol_blocks(const LevyMeasure& measure, cplx xi) {
    SymbolBlocks b;
    b.e_gamma = I * xi - 1.0;
    b.e_a = -xi * xi - I * xi;
    b.e_jump = measure.is_zero() ? cplx(0.0) : measure.chi(xi) - I * xi * measure.compensator();
    return b;
}

SymbolBlockJets symbol_block_jets(const LevyMeasure& measure, cplx xi0, int order) {
    const CJet x = CJet::variable(xi0, order);
    const CJet ix = x * I;
    SymbolBlockJets b{ix - 1.0, -(x * x) - ix, CJet::constant(0.0, order)};
    if (!measure.is_zero()) b.e_jump = measure.chi_jet(xi0, order) - ix * cplx(measure.compensator());
    return b;
}

FrozenSymbol::FrozenSymbol(std::function<FrozenCoeffs(double)> coeffs,
                           std::shared_ptr<const LevyMeasure> measure)
    : coeffs_(std::move(coeffs)), measure_(std::move(measure)) {}

FrozenSymbol::FrozenSymbol(FrozenCoeffs constant, std::shared_ptr<const LevyMeasure> measure)
    : coeffs_([constant](double) { return constant; }), measure_(std::move(measure)) {}

cplx symbol_eval(const FrozenSymbol& frozen, double t, cplx xi) {
    const FrozenCoeffs c = frozen.coefficients(t);
    return symbol_blocks(frozen.measure(), xi).combine(c);
}

}  // namespace levyx
