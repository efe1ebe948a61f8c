#include "levyx/fourier.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levyx/error.hpp"
#include "levyx/quadrature.hpp"

namespace levyx {

namespace {

std::atomic<std::uint64_t> g_quadrature_calls{0};

// pairwise summation keeps the result independent of blocking
cplx pairwise(const cplx* v, std::size_t n) {
    if (n <= 16) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise(v, h) + pairwise(v + h, n - h);
}

}  // namespace

FourierGrid fourier_grid(double contour, double R, const FourierOptions& opt) {
    require(R > 0.0, ErrorKind::Config, "Fourier truncation must be positive");
    FourierGrid g;
    g.contour = contour;
    g.R = R;
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * R / opt.panel_width - 1e-9)));
    const double width = 2.0 * R / panels;
    const QuadratureRule ref = gauss_legendre(opt.panel_points, 0.0, 1.0);
    g.nodes.reserve(static_cast<std::size_t>(panels) * ref.size());
    g.weights.reserve(g.nodes.capacity());
    for (int p = 0; p < panels; ++p) {
        const double a = -R + p * width;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            g.nodes.push_back(a + width * ref.nodes[i]);
            g.weights.push_back(width * ref.weights[i]);
        }
    }
    return g;
}

double choose_truncation(const std::function<double(double)>& magnitude, const FourierOptions& opt) {
    if (opt.R > 0.0) return opt.R;
    for (double R = opt.panel_width; R <= opt.R_cap + 1e-9; R += opt.panel_width) {
        if (magnitude(R) < opt.tail_tol && magnitude(-R) < opt.tail_tol) return R;
    }
    std::ostringstream os;
    os << "integrand still exceeds " << opt.tail_tol << " at |Re xi| = " << opt.R_cap
       << " (magnitude " << std::max(magnitude(opt.R_cap), magnitude(-opt.R_cap))
       << "); raise the truncation cap or use a larger maturity";
    fail(ErrorKind::Truncation, os.str());
}

InverseResult inverse_sum(const FourierGrid& grid, const std::vector<cplx>& vhat, double x,
                          const FourierOptions& opt) {
    require(vhat.size() == grid.size(), ErrorKind::Config, "transform samples do not match the grid");
    g_quadrature_calls.fetch_add(1, std::memory_order_relaxed);
    std::vector<cplx> terms(grid.size());
    const cplx ix(0.0, x);
    for (std::size_t i = 0; i < grid.size(); ++i)
        terms[i] = grid.weights[i] * std::exp(ix * grid.xi(i)) * vhat[i];
    const cplx s = pairwise(terms.data(), terms.size()) / std::sqrt(2.0 * std::numbers::pi);
    InverseResult r;
    r.value = s.real();
    r.imag = s.imag();
    r.imag_warning = std::abs(s.imag()) > opt.imag_tol * (1.0 + std::abs(s.real()));
    return r;
}

InverseResult inverse_fourier(const std::function<cplx(cplx)>& vhat, double contour, double x,
                              const FourierOptions& opt) {
    const double R = choose_truncation(
        [&](double xr) { return std::abs(vhat({xr, contour}) * std::exp(cplx(0.0, x) * cplx(xr, contour))); },
        opt);
    const FourierGrid g = fourier_grid(contour, R, opt);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = vhat(g.xi(i));
    return inverse_sum(g, v, x, opt);
}

std::uint64_t contour_quadrature_count() noexcept {
    return g_quadrature_calls.load(std::memory_order_relaxed);
}

}  // namespace levyx
