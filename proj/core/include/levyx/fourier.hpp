#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levyx/jet.hpp"

namespace levyx {

struct FourierOptions {
    double R = 0.0;             // truncation; 0 selects it adaptively
    double R_cap = 2000.0;
    double panel_width = 10.0;
    int panel_points = 64;
    double tail_tol = 1e-12;
    double imag_tol = 1e-8;
};

/// Gauss-Legendre panels on [-R, R] along Re(xi).
struct FourierGrid {
    double contour = 0.0;  // Im(xi)
    double R = 0.0;
    std::vector<double> nodes, weights;

    cplx xi(std::size_t i) const noexcept { return {nodes[i], contour}; }
    std::size_t size() const noexcept { return nodes.size(); }
};

FourierGrid fourier_grid(double contour, double R, const FourierOptions& opt = {});

/// Smallest panel multiple R with magnitude(+-R) < tail_tol; raises a
/// truncation error past R_cap.
double choose_truncation(const std::function<double(double)>& magnitude, const FourierOptions& opt = {});

struct InverseResult {
    double value = 0.0;
    double imag = 0.0;
    bool imag_warning = false;
};

/// (2 pi)^{-1/2} sum_i w_i e^{i xi_i x} vhat_i on the grid.
InverseResult inverse_sum(const FourierGrid& grid, const std::vector<cplx>& vhat, double x,
                          const FourierOptions& opt = {});

/// Adaptive inverse transform of vhat along Im(xi) = contour.
InverseResult inverse_fourier(const std::function<cplx(cplx)>& vhat, double contour, double x,
                              const FourierOptions& opt = {});

/// Number of contour-quadrature sums performed so far in this process.
std::uint64_t contour_quadrature_count() noexcept;

}  // namespace levyx
