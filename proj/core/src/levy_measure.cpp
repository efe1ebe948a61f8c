#include "levyx/levy_measure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "levyx/error.hpp"
#include "levyx/quadrature.hpp"

namespace levyx {

namespace {

constexpr cplx I{0.0, 1.0};

// e^w - 1 - w without cancellation for small |w|
cplx exp_m1_m_id(cplx w) {
    if (std::abs(w) < 1e-2) {
        cplx term = w * w / 2.0;
        cplx acc = term;
        for (int n = 3; n <= 8; ++n) {
            term *= w / static_cast<double>(n);
            acc += term;
        }
        return acc;
    }
    return std::exp(w) - 1.0 - w;
}

cplx expm1c(cplx w) {
    if (std::abs(w) < 1e-2) return w + exp_m1_m_id(w);
    return std::exp(w) - 1.0;
}

double find_tail(const std::function<double(double)>& nu, double sign) {
    for (double z = 1.0; z <= 256.0; z *= 2.0) {
        const double x = sign * z;
        const double w = nu(x) * std::max({1.0, std::exp(x), x * x});
        if (w < 1e-14) return x;
    }
    fail(ErrorKind::Domain, "jump density tail does not decay below 1e-14 within |z| <= 256");
}

// integral of g over [lo, hi], split at zero where densities may be singular
cplx integrate_split(const std::function<cplx(double)>& g, double lo, double hi, double rel_tol) {
    cplx acc = 0.0;
    if (lo < 0.0) acc += integrate_adaptive_complex(g, lo, std::min(hi, 0.0), rel_tol);
    if (hi > 0.0) acc += integrate_adaptive_complex(g, std::max(lo, 0.0), hi, rel_tol);
    return acc;
}

double integrate_split_real(const std::function<double(double)>& g, double lo, double hi,
                            double* err_out) {
    double total = 0.0, err_total = 0.0, err = 0.0;
    if (lo < 0.0) {
        total += integrate_adaptive(g, lo, std::min(hi, 0.0), 1e-12, &err);
        err_total += err;
    }
    if (hi > 0.0) {
        total += integrate_adaptive(g, std::max(lo, 0.0), hi, 1e-12, &err);
        err_total += err;
    }
    if (err_out) *err_out = err_total;
    return total;
}

}  // namespace

std::string Strip::describe() const {
    std::ostringstream os;
    os << lo << " < Im(xi) < " << hi;
    return os.str();
}

void vg_decay_rates(double theta, double rho, double kappa, double& lambda_plus,
                    double& lambda_minus) {
    require(kappa > 0.0, ErrorKind::Config, "variance-gamma kappa must be positive");
    require(rho >= 0.0, ErrorKind::Config, "variance-gamma rho must be nonnegative");
    const double root = std::sqrt(theta * theta * kappa * kappa / 4.0 + rho * rho * kappa / 2.0);
    require(root > std::abs(theta) * kappa / 2.0, ErrorKind::Config,
            "variance-gamma parameters give a degenerate decay rate (rho = 0)");
    lambda_plus = 1.0 / (root + theta * kappa / 2.0);
    lambda_minus = 1.0 / (root - theta * kappa / 2.0);
}

LevyMeasure LevyMeasure::gaussian(double lambda, double mean, double stdev) {
    require(lambda >= 0.0, ErrorKind::Config, "Gaussian jump intensity must be nonnegative");
    require(stdev > 0.0, ErrorKind::Config, "Gaussian jump standard deviation must be positive");
    LevyMeasure m;
    m.kind_ = Kind::Gaussian;
    m.gauss_ = {lambda, mean, stdev};
    m.lo_ = mean - 40.0 * stdev;
    m.hi_ = mean + 40.0 * stdev;
    m.compensator_ = lambda * (std::exp(mean + 0.5 * stdev * stdev) - 1.0 - mean);
    return m;
}

LevyMeasure LevyMeasure::variance_gamma(double theta, double rho, double kappa) {
    LevyMeasure m;
    m.kind_ = Kind::VarianceGamma;
    double lp = 0.0, lm = 0.0;
    vg_decay_rates(theta, rho, kappa, lp, lm);
    require(lp > 1.0, ErrorKind::Config,
            "variance-gamma lambda_plus = " + std::to_string(lp) +
                " <= 1: the exponential moment of the jump measure diverges");
    m.vg_ = {theta, rho, kappa, lp, lm};
    m.strip_ = {-lp, lm};
    m.lo_ = -40.0 / lm;
    m.hi_ = 40.0 / lp;
    const double psi = -(std::log(1.0 - 1.0 / lp) + std::log(1.0 + 1.0 / lm)) / kappa;
    const double first = (1.0 / lp - 1.0 / lm) / kappa;
    m.compensator_ = psi - first;
    return m;
}

LevyMeasure LevyMeasure::numeric(std::function<double(double)> density, double lo, double hi,
                                 Strip strip) {
    LevyMeasure m;
    m.kind_ = Kind::Numeric;
    m.density_ = std::make_shared<const std::function<double(double)>>(std::move(density));
    const auto& nu = *m.density_;
    m.lo_ = std::isfinite(lo) ? lo : find_tail(nu, -1.0);
    m.hi_ = std::isfinite(hi) ? hi : find_tail(nu, +1.0);
    require(m.lo_ < m.hi_, ErrorKind::Config, "numeric jump density has an empty support");
    m.strip_ = strip;

    double err = 0.0;
    const double small = integrate_split_real(
        [&](double z) { return std::min(1.0, z * z) * nu(z); }, m.lo_, m.hi_, &err);
    require(std::isfinite(small) && err <= 1e-6 * (1.0 + std::abs(small)), ErrorKind::Config,
            "jump density fails the integrability condition on min(1, z^2)");
    double big = 0.0;
    if (m.lo_ < -1.0) big += integrate_adaptive([&](double z) { return std::exp(z) * nu(z); }, m.lo_, -1.0);
    if (m.hi_ > 1.0) big += integrate_adaptive([&](double z) { return std::exp(z) * nu(z); }, 1.0, m.hi_);
    require(std::isfinite(big), ErrorKind::Config,
            "jump density fails the exponential moment condition on |z| >= 1");
    m.compensator_ = m.chi_by_quadrature(cplx(0.0, -1.0)).real();
    return m;
}

bool LevyMeasure::is_zero() const noexcept {
    return kind_ == Kind::None || (kind_ == Kind::Gaussian && gauss_.lambda == 0.0);
}

const GaussianJumps& LevyMeasure::gaussian_params() const {
    require(kind_ == Kind::Gaussian, ErrorKind::Unsupported, "jump measure is not Gaussian");
    return gauss_;
}

const VarianceGammaJumps& LevyMeasure::vg_params() const {
    require(kind_ == Kind::VarianceGamma, ErrorKind::Unsupported,
            "jump measure is not variance-gamma");
    return vg_;
}

double LevyMeasure::density(double z) const {
    switch (kind_) {
        case Kind::None: return 0.0;
        case Kind::Gaussian: {
            const double u = (z - gauss_.mean) / gauss_.stdev;
            return gauss_.lambda * std::exp(-0.5 * u * u) /
                   (std::sqrt(2.0 * std::numbers::pi) * gauss_.stdev);
        }
        case Kind::VarianceGamma:
            if (z == 0.0) return std::numeric_limits<double>::infinity();
            if (z < 0.0) return std::exp(-vg_.lambda_minus * -z) / (vg_.kappa * -z);
            return std::exp(-vg_.lambda_plus * z) / (vg_.kappa * z);
        case Kind::Numeric: return (z < lo_ || z > hi_) ? 0.0 : (*density_)(z);
    }
    return 0.0;
}

void LevyMeasure::check_domain(cplx xi) const {
    if (!strip_.contains(xi.imag())) {
        std::ostringstream os;
        os << "frequency " << xi.real() << (xi.imag() < 0 ? " - " : " + ") << std::abs(xi.imag())
           << "i lies outside the jump transform strip " << strip_.describe();
        fail(ErrorKind::Domain, os.str());
    }
}

cplx LevyMeasure::chi(cplx xi) const {
    switch (kind_) {
        case Kind::None: return 0.0;
        case Kind::Gaussian: {
            const auto& g = gauss_;
            const cplx w = I * xi * g.mean - 0.5 * xi * xi * g.stdev * g.stdev;
            // e^w - 1 - i xi m, grouped to keep accuracy near xi = 0
            return g.lambda * (expm1c(w) - I * xi * g.mean);
        }
        case Kind::VarianceGamma: {
            check_domain(xi);
            const auto& v = vg_;
            const cplx psi =
                -(std::log(1.0 - I * xi / v.lambda_plus) + std::log(1.0 + I * xi / v.lambda_minus)) /
                v.kappa;
            const double first = (1.0 / v.lambda_plus - 1.0 / v.lambda_minus) / v.kappa;
            return psi - I * xi * first;
        }
        case Kind::Numeric:
            check_domain(xi);
            return chi_by_quadrature(xi);
    }
    return 0.0;
}

CJet LevyMeasure::chi_jet(cplx xi0, int order) const {
    switch (kind_) {
        case Kind::None: return CJet::constant(0.0, order);
        case Kind::Gaussian: {
            const auto& g = gauss_;
            if (g.lambda == 0.0) return CJet::constant(0.0, order);
            const CJet x = CJet::variable(xi0, order);
            CJet r = (exp(x * (I * g.mean) - x * x * (0.5 * g.stdev * g.stdev)) - 1.0 -
                      x * (I * g.mean)) *
                     cplx(g.lambda);
            r[0] = chi(xi0);
            return r;
        }
        case Kind::VarianceGamma: {
            check_domain(xi0);
            const auto& v = vg_;
            const CJet x = CJet::variable(xi0, order);
            const double first = (1.0 / v.lambda_plus - 1.0 / v.lambda_minus) / v.kappa;
            CJet r = (log(1.0 - x * (I / v.lambda_plus)) + log(1.0 + x * (I / v.lambda_minus))) *
                         cplx(-1.0 / v.kappa) -
                     x * (I * first);
            return r;
        }
        case Kind::Numeric: {
            check_domain(xi0);
            const auto& nu = *density_;
            CJet r(order);
            double fact = 1.0;
            for (int j = 0; j <= order; ++j) {
                if (j > 0) fact *= j;
                auto g = [&, j](double z) -> cplx {
                    const cplx w = I * xi0 * z;
                    if (j == 0) return nu(z) * exp_m1_m_id(w);
                    if (j == 1) return nu(z) * I * z * expm1c(w);
                    return nu(z) * std::pow(I * z, j) * std::exp(w);
                };
                r[j] = integrate_split(g, lo_, hi_, 1e-12) / fact;
            }
            return r;
        }
    }
    return CJet::constant(0.0, order);
}

double LevyMeasure::compensator() const { return compensator_; }

cplx LevyMeasure::chi_by_quadrature(cplx xi, double rel_tol) const {
    if (kind_ == Kind::None) return 0.0;
    auto g = [&](double z) -> cplx { return density(z) * exp_m1_m_id(I * xi * z); };
    return integrate_split(g, lo_, hi_, rel_tol);
}

std::string LevyMeasure::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::None: os << "none"; break;
        case Kind::Gaussian:
            os << "gaussian(lambda=" << gauss_.lambda << ", m=" << gauss_.mean
               << ", eta=" << gauss_.stdev << ")";
            break;
        case Kind::VarianceGamma:
            os << "vg(theta=" << vg_.theta << ", rho=" << vg_.rho << ", kappa=" << vg_.kappa << ")";
            break;
        case Kind::Numeric: os << "numeric[" << lo_ << ", " << hi_ << "]"; break;
    }
    return os.str();
}

}  // namespace levyx
