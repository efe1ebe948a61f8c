#pragma once

#include <functional>

#include "levyx/model.hpp"

namespace levyx {

/// Dominating constant M and series controls for the Gaussian-jump kernels.
/// Everything computed here is an envelope shape with a free constant, not a
/// certified bound.
struct BoundParams {
    double M = 1.0;
    double series_tol = 1e-16;  // stop once terms fall below this (relative)
    int max_terms = 4000;
};

/// C^k Gamma_bar(t, x; T, y): the k-fold jump convolution of the
/// constant-coefficient kernel with variance and jump law driven by M.
double convolved_kernel(int k, double t, double x, double T, double y, const BoundParams& p);

inline double gamma_bar(double t, double x, double T, double y, const BoundParams& p) {
    return convolved_kernel(0, t, x, T, y, p);
}

/// Gamma_tilde by its explicit double series.
double gamma_tilde(double t, double x, double T, double y, const BoundParams& p);

/// Gamma_tilde assembled from convolved kernels, sum_k (M tau)^{k/2}/sqrt(k!) C^{k+1} Gamma_bar.
double gamma_tilde_from_kernels(double t, double x, double T, double y, const BoundParams& p);

struct EnvelopeTerms {
    double value = 0.0;
    double gamma_bar = 0.0;
    double gamma_tilde = 0.0;
};

/// C (T - t) (Gamma_bar + ||d_x nu|| Gamma_tilde), taking g_N(s) = C s.
EnvelopeTerms density_error_envelope(double t, double x, double T, double y, const BoundParams& p,
                                     double dnu_norm, double C);

/// Price envelope: the density envelope integrated against |h(y)|.
double price_error_envelope(const std::function<double(double)>& h, double t, double x, double T,
                            const BoundParams& p, double dnu_norm, double C);

/// |int C^k G(t,x;s,z) C^N G(s,z;T,y) dz - C^{k+N} G(t,x;T,y)|.
double semigroup_check(int k, int N, double t, double s, double T, double x, double y,
                       const BoundParams& p);

/// Bound inputs derived from a Gaussian-jump model on the box:
/// M = 1.1 max{2a, gamma, lambda, eta^2, |m_J|} and ||d_x nu||_inf.
struct ModelBoundInputs {
    BoundParams params;
    double dnu_norm = 0.0;
};

ModelBoundInputs bound_inputs(const ModelSpec& model, const ModelDomain& box, int grid = 61);

}  // namespace levyx
