#include "levyx/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyx/error.hpp"
#include "levyx/symbol.hpp"

namespace levyx {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr int kGridT = 5;
constexpr int kGridX = 41;

template <class F>
void for_grid(const ModelDomain& d, F&& f) {
    for (int i = 0; i < kGridT; ++i) {
        const double t = d.t_lo + (d.t_hi - d.t_lo) * i / (kGridT - 1);
        for (int j = 0; j < kGridX; ++j) {
            const double x = d.x_lo + (d.x_hi - d.x_lo) * j / (kGridX - 1);
            f(t, x);
        }
    }
}

bool looks_unbounded(const CoefficientField& c, const ModelDomain& d) {
    double coef = 0.0, k = 0.0;
    if (c.as_exponential(coef, k)) return coef != 0.0 && k != 0.0;
    double scale = 1.0;
    for_grid(d, [&](double t, double x) { scale = std::max(scale, std::abs(c(t, x))); });
    for (double x : {-30.0, -15.0, 15.0, 30.0}) {
        const double v = c(d.t_lo, x);
        if (!std::isfinite(v) || std::abs(v) > 1e6 * scale) return true;
    }
    return false;
}

}  // namespace

ModelSpec::ModelSpec(CoefficientField a, CoefficientField gamma, CoefficientField multiplier,
                     LevyMeasure measure, ModelDomain domain)
    : a_(std::move(a)),
      gamma_(std::move(gamma)),
      mult_(std::move(multiplier)),
      measure_(std::make_shared<const LevyMeasure>(std::move(measure))),
      domain_(domain) {
    validate();
}

void ModelSpec::validate() {
    require(domain_.t_lo <= domain_.t_hi && domain_.x_lo < domain_.x_hi, ErrorKind::Config,
            "model domain is empty");
    struct Named {
        const CoefficientField* c;
        const char* name;
    };
    for (const Named& n : {Named{&a_, "a"}, Named{&gamma_, "gamma"}, Named{&mult_, "jump multiplier"}}) {
        for_grid(domain_, [&](double t, double x) {
            const double v = (*n.c)(t, x);
            if (!std::isfinite(v) || v < -1e-14) {
                std::ostringstream os;
                os << "coefficient " << n.name << " = " << v << " at (t=" << t << ", x=" << x
                   << ") must be finite and nonnegative";
                fail(ErrorKind::Config, os.str());
            }
        });
        if (looks_unbounded(*n.c, domain_))
            warnings_.push_back(std::string("coefficient ") + n.name +
                                " is unbounded in x; expansions are formal");
    }
}

bool ModelSpec::time_homogeneous() const noexcept {
    return !a_.depends_on_t() && !gamma_.depends_on_t() && !mult_.depends_on_t();
}

bool ModelSpec::has_exact_derivatives() const noexcept {
    return a_.has_exact_derivatives() && gamma_.has_exact_derivatives() &&
           mult_.has_exact_derivatives();
}

void ModelSpec::declare_proportional(ProportionalForm form) { declared_ = std::move(form); }

std::optional<ProportionalForm> ModelSpec::proportional_form() const {
    if (declared_) return declared_;

    const bool jumps = !measure_->is_zero();
    const CoefficientField* g = nullptr;
    for (const CoefficientField* c : {jumps ? &mult_ : nullptr, &a_, &gamma_})
        if (c && !c->is_zero()) {
            g = c;
            break;
        }
    ProportionalForm form;
    if (g == nullptr) {
        form.f = CoefficientField::constant(1.0);
        return form;
    }

    // reference point with a nonzero profile value
    const double t0 = domain_.t_lo;
    double x_ref = 0.5 * (domain_.x_lo + domain_.x_hi);
    double g_ref = (*g)(t0, x_ref);
    for (int j = 0; j < kGridX && g_ref == 0.0; ++j) {
        x_ref = domain_.x_lo + (domain_.x_hi - domain_.x_lo) * j / (kGridX - 1);
        g_ref = (*g)(t0, x_ref);
    }

    double coef = 0.0, k = 0.0;
    if (g->as_exponential(coef, k)) {
        form.f = CoefficientField::exponential(std::exp(-k * x_ref), k);
    } else if (!g->depends_on_t()) {
        form.f = g->scaled(1.0 / g_ref);
    } else {
        const CoefficientField copy = *g;
        form.f = CoefficientField::from_function(
            [copy, t0, g_ref](double, double x) { return copy(t0, x) / g_ref; }, false);
    }

    auto time_part = [&](const CoefficientField& c) {
        if (!c.depends_on_t()) return CoefficientField::constant(c(t0, x_ref));
        return CoefficientField::from_function([c, x_ref](double t, double) { return c(t, x_ref); });
    };
    form.A = time_part(a_);
    form.Gamma = time_part(gamma_);
    form.C = jumps ? time_part(mult_) : CoefficientField::constant(0.0);

    // confirm separability on the grid
    bool ok = true;
    auto check = [&](const CoefficientField& c, const CoefficientField& tp) {
        for_grid(domain_, [&](double t, double x) {
            const double want = c(t, x);
            const double got = tp(t, x) * form.f(t, x);
            if (std::abs(want - got) > 1e-10 * std::max(1.0, std::abs(want))) ok = false;
        });
    };
    check(a_, form.A);
    check(gamma_, form.Gamma);
    if (jumps) check(mult_, form.C);
    if (!ok) return std::nullopt;
    return form;
}

double drift_from_coefficients(const ModelSpec& model, double t, double x) {
    const double jump = model.measure().is_zero() ? 0.0 : model.multiplier()(t, x) * model.measure().compensator();
    return model.gamma()(t, x) - model.a()(t, x) - jump;
}

cplx full_symbol(const ModelSpec& model, double t, double x, cplx xi) {
    const FrozenCoeffs c{model.gamma()(t, x), model.a()(t, x), model.multiplier()(t, x)};
    return symbol_blocks(model.measure(), xi).combine(c);
}

cplx generator_symbol(const ModelSpec& model, double t, double x, cplx xi) {
    const double mu = drift_from_coefficients(model, t, x);
    const cplx jump = model.measure().is_zero() ? cplx(0.0) : model.multiplier()(t, x) * model.measure().chi(xi);
    return -model.gamma()(t, x) + I * xi * mu - model.a()(t, x) * xi * xi + jump;
}

}  // namespace levyx
