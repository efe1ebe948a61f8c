#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "levyx/jet.hpp"

namespace levyx {

/// Open strip lo < Im(xi) < hi on which the jump transforms converge.
struct Strip {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double im) const noexcept { return im > lo && im < hi; }
    std::string describe() const;
};

struct GaussianJumps {
    double lambda = 0.0;  // intensity per year
    double mean = 0.0;    // mean jump size
    double stdev = 1.0;   // jump standard deviation
};

struct VarianceGammaJumps {
    double theta = 0.0;
    double rho = 0.0;
    double kappa = 1.0;
    double lambda_plus = 0.0;   // decay rate of positive jumps
    double lambda_minus = 0.0;  // decay rate of negative jumps
};

/// Jump measure nu(dz) of a scalar process.
///
/// chi(xi) denotes the grouped transform  int nu(dz) (e^{i xi z} - 1 - i xi z).
class LevyMeasure {
public:
    enum class Kind { None, Gaussian, VarianceGamma, Numeric };

    LevyMeasure() = default;  // no jumps

    static LevyMeasure gaussian(double lambda, double mean, double stdev);
    static LevyMeasure variance_gamma(double theta, double rho, double kappa);
    /// Density z -> nu(z) >= 0. Infinite bounds are truncated where the
    /// weighted tail falls below 1e-14. `strip` limits admissible Im(xi).
    static LevyMeasure numeric(std::function<double(double)> density, double lo = -std::numeric_limits<double>::infinity(),
                               double hi = std::numeric_limits<double>::infinity(),
                               Strip strip = {});

    Kind kind() const noexcept { return kind_; }
    bool is_zero() const noexcept;
    const GaussianJumps& gaussian_params() const;
    const VarianceGammaJumps& vg_params() const;

    Strip strip() const noexcept { return strip_; }

    /// Density of nu; available for every kind (zero when there are no jumps).
    double density(double z) const;

    cplx chi(cplx xi) const;
    /// Jet of chi in xi at xi0.
    CJet chi_jet(cplx xi0, int order) const;
    /// int nu(dz) (e^z - 1 - z) = chi(-i).
    double compensator() const;
    /// chi by direct quadrature of the density, whatever the kind.
    cplx chi_by_quadrature(cplx xi, double rel_tol = 1e-12) const;

    /// Truncated support used by quadrature.
    double support_lo() const noexcept { return lo_; }
    double support_hi() const noexcept { return hi_; }

    std::string describe() const;

private:
    void check_domain(cplx xi) const;

    Kind kind_ = Kind::None;
    GaussianJumps gauss_{};
    VarianceGammaJumps vg_{};
    std::shared_ptr<const std::function<double(double)>> density_;
    double lo_ = 0.0, hi_ = 0.0;
    Strip strip_{};
    double compensator_ = 0.0;
};

/// Variance-gamma decay rates from (theta, rho, kappa).
void vg_decay_rates(double theta, double rho, double kappa, double& lambda_plus,
                    double& lambda_minus);

}  // namespace levyx
