#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace levyx {

/// Fixed nodes and weights of an interpolatory rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n-point Gauss-Hermite rule for the weight exp(-(x - center)^2).
QuadratureRule gauss_hermite(int n, double center = 0.0);

/// Adaptive Gauss-Kronrod (61 points) on [a, b]; infinite limits allowed.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double* error_estimate = nullptr);

std::complex<double> integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double rel_tol = 1e-12);

}  // namespace levyx
