#include "levyx/presets.hpp"

#include "levyx/error.hpp"
#include "levyx/rng.hpp"

namespace levyx {

ModelSpec cev_gauss_model(const CevGaussParams& p) {
    const double k = 2.0 * (p.beta - 1.0);
    ModelSpec m(CoefficientField::exponential(0.5 * p.delta * p.delta, k),
                CoefficientField::constant(0.0), CoefficientField::exponential(1.0, k),
                LevyMeasure::gaussian(p.lambda, p.m, p.eta));
    ProportionalForm form;
    form.f = CoefficientField::exponential(1.0, k);
    form.A = CoefficientField::constant(0.5 * p.delta * p.delta);
    form.Gamma = CoefficientField::constant(0.0);
    form.C = CoefficientField::constant(1.0);
    m.declare_proportional(form);
    m.name = "cev-gauss";
    return m;
}

ModelSpec cev_vg_model(const CevVgParams& p) {
    const double k = 2.0 * (p.beta - 1.0);
    ModelSpec m(CoefficientField::exponential(0.5 * p.delta * p.delta, k),
                CoefficientField::constant(0.0), CoefficientField::exponential(1.0, k),
                LevyMeasure::variance_gamma(p.theta, p.rho, p.kappa));
    ProportionalForm form;
    form.f = CoefficientField::exponential(1.0, k);
    form.A = CoefficientField::constant(0.5 * p.delta * p.delta);
    form.Gamma = CoefficientField::constant(0.0);
    form.C = CoefficientField::constant(1.0);
    m.declare_proportional(form);
    m.name = "cev-vg";
    return m;
}

CevGaussParams randomize_cev_gauss(std::uint64_t seed) {
    Philox4x32 g(seed, 0x5eedu);
    CevGaussParams p;
    p.delta = 0.6 * g.uniform();
    p.beta = g.uniform();
    p.lambda = g.uniform();
    p.m = -g.uniform();
    p.eta = g.uniform();  // open interval keeps eta > 0
    return p;
}

Preset make_preset(const std::string& name) {
    Preset out;
    if (name == "cev-gauss") {
        const CevGaussParams p;
        out.model = cev_gauss_model(p);
        out.params = {{"delta", p.delta}, {"beta", p.beta}, {"lambda", p.lambda}, {"m", p.m}, {"eta", p.eta}};
    } else if (name == "cev-vg") {
        const CevVgParams p;
        out.model = cev_vg_model(p);
        out.params = {{"delta", p.delta}, {"beta", p.beta}, {"theta", p.theta}, {"rho", p.rho}, {"kappa", p.kappa}};
    } else if (name == "bs") {
        out.model = ModelSpec(CoefficientField::constant(0.02), CoefficientField::constant(0.0),
                              CoefficientField::constant(0.0), LevyMeasure());
        out.model.name = "bs";
        out.params = {{"sigma", 0.2}};
    } else if (name == "merton") {
        out.model = ModelSpec(CoefficientField::constant(0.02), CoefficientField::constant(0.0),
                              CoefficientField::constant(1.0), LevyMeasure::gaussian(0.3, -0.1, 0.4));
        out.model.name = "merton";
        out.params = {{"a", 0.02}, {"lambda", 0.3}, {"m", -0.1}, {"eta", 0.4}};
    } else {
        fail(ErrorKind::Config, "unknown preset '" + name + "' (known: cev-gauss, cev-vg, bs, merton)");
    }
    out.x0 = 0.0;
    return out;
}

std::vector<std::string> preset_names() { return {"cev-gauss", "cev-vg", "bs", "merton"}; }

}  // namespace levyx
