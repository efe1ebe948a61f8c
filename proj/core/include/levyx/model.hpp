#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levyx/coefficient.hpp"
#include "levyx/levy_measure.hpp"

namespace levyx {

/// Rectangle of (t, x) on which coefficients are spot-checked.
struct ModelDomain {
    double t_lo = 0.0, t_hi = 5.0;
    double x_lo = -3.0, x_hi = 3.0;
};

/// a = f*A, gamma = f*Gamma, jump multiplier = f*C with f depending on x only
/// and A, Gamma, C depending on t only.
struct ProportionalForm {
    CoefficientField f;
    CoefficientField A, Gamma, C;  // functions of t (x is ignored)
};

/// Scalar Levy-type model: local half-variance a(t,x), default intensity
/// gamma(t,x) and a jump field multiplier(t,x) * nu(dz).
class ModelSpec {
public:
    ModelSpec() = default;
    ModelSpec(CoefficientField a, CoefficientField gamma, CoefficientField multiplier,
              LevyMeasure measure, ModelDomain domain = {});

    const CoefficientField& a() const noexcept { return a_; }
    const CoefficientField& gamma() const noexcept { return gamma_; }
    const CoefficientField& multiplier() const noexcept { return mult_; }
    const LevyMeasure& measure() const noexcept { return *measure_; }
    std::shared_ptr<const LevyMeasure> measure_ptr() const noexcept { return measure_; }
    const ModelDomain& domain() const noexcept { return domain_; }

    bool time_homogeneous() const noexcept;
    bool has_exact_derivatives() const noexcept;

    /// Declare the proportional structure explicitly (presets do this).
    void declare_proportional(ProportionalForm form);
    /// Declared form, or one detected numerically on the domain grid.
    std::optional<ProportionalForm> proportional_form() const;

    /// Warnings raised at construction (e.g. unbounded coefficients).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    std::string name;
    std::string description;

private:
    void validate();

    CoefficientField a_, gamma_, mult_;
    std::shared_ptr<const LevyMeasure> measure_ = std::make_shared<LevyMeasure>();
    ModelDomain domain_{};
    std::optional<ProportionalForm> declared_;
    std::vector<std::string> warnings_;
};

/// mu(t,x) = gamma - a - multiplier * int nu(dz)(e^z - 1 - z).
double drift_from_coefficients(const ModelSpec& model, double t, double x);

/// Full symbol phi(t, x, xi).
cplx full_symbol(const ModelSpec& model, double t, double x, cplx xi);

/// Symbol assembled from the generator with the explicit drift mu:
/// -gamma + i xi mu - a xi^2 + multiplier * chi(xi).
cplx generator_symbol(const ModelSpec& model, double t, double x, cplx xi);

}  // namespace levyx
