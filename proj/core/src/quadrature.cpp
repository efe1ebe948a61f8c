#include "levyx/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <memory>
#include <string>

#include "levyx/error.hpp"

namespace levyx {

QuadratureRule gauss_legendre(int n, double a, double b) {
    require(n >= 1, ErrorKind::Config, "Gauss-Legendre order must be positive");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
        table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
              &gsl_integration_glfixed_table_free);
    require(table != nullptr, ErrorKind::Numeric, "failed to build Gauss-Legendre table");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &rule.nodes[i], &rule.weights[i],
                                      table.get());
    }
    return rule;
}

QuadratureRule gauss_hermite(int n, double center) {
    require(n >= 1, ErrorKind::Config, "Gauss-Hermite order must be positive");
    // weight exp(-b (x - a)^2) with b = 1
    std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<size_t>(n), center,
                                    1.0, 0.0, 0.0),
        &gsl_integration_fixed_free);
    require(ws != nullptr, ErrorKind::Numeric, "failed to build Gauss-Hermite table");
    const double* x = gsl_integration_fixed_nodes(ws.get());
    const double* w = gsl_integration_fixed_weights(ws.get());
    QuadratureRule rule;
    rule.nodes.assign(x, x + n);
    rule.weights.assign(w, w + n);
    return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double* error_estimate) {
    double err = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20,
                                                                                 rel_tol, &err);
    require(std::isfinite(value), ErrorKind::Convergence, "adaptive quadrature returned a non-finite value");
    if (error_estimate) *error_estimate = err;
    return value;
}

std::complex<double> integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double rel_tol) {
    const double re = integrate_adaptive([&](double z) { return f(z).real(); }, a, b, rel_tol);
    const double im = integrate_adaptive([&](double z) { return f(z).imag(); }, a, b, rel_tol);
    return {re, im};
}

}  // namespace levyx
