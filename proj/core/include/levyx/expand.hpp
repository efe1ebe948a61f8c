#pragma once

#include <functional>
#include <vector>

#include "levyx/basis.hpp"
#include "levyx/jet.hpp"

namespace levyx {

/// Payoff transform lifted to a jet: (xi0, order) -> Taylor jet of h^ at xi0.
using HatJet = std::function<CJet(cplx, int)>;

/// Polynomial in the time variable s whose coefficients are linear in the
/// payoff derivatives: sum_{p,j} c(p,j) s^p h^(j)(xi), each c a jet at xi0.
class TermPolynomial {
public:
    void reset(int pmax, int jmax);
    bool live(int p, int j) const noexcept { return live_[index(p, j)] != 0; }
    const CJet& at(int p, int j) const noexcept { return c_[index(p, j)]; }
    void add(int p, int j, const CJet& v);
    int pmax() const noexcept { return pmax_; }
    int jmax() const noexcept { return jmax_; }
    bool empty() const noexcept;

private:
    std::size_t index(int p, int j) const noexcept {
        return static_cast<std::size_t>(p) * static_cast<std::size_t>(jmax_ + 1) + static_cast<std::size_t>(j);
    }
    int pmax_ = 0, jmax_ = 0;
    std::vector<CJet> c_;
    std::vector<unsigned char> live_;
};

/// Payoff-independent kernel of the homogeneous engine at one frequency:
///   u_n(tau, xi) = e^{tau phi0(xi)} sum_{p,j} c_n(p,j) tau^p h^(j)(xi).
struct TermKernel {
    cplx xi;
    CJet phi0;  // jet of phi_0 at xi
    std::vector<TermPolynomial> terms;

    /// u_n(tau, xi) given h^(j)(xi), j = 0..
    cplx value(int n, double tau, const std::vector<cplx>& hhat_derivs) const;
    /// Jet of u_n(tau, .) at xi, of order `order` (needs the extra budget).
    CJet jet(int n, double tau, const CJet& hhat, int order) const;
};

/// Scratch buffers reused across frequencies (one per thread).
struct ExpandWorkspace {
    std::vector<TermPolynomial> tmp;
};

/// Time-homogeneous engine: exact in time, no quadrature.
class HomogeneousEngine {
public:
    /// `extra_order` adds derivative headroom to the final terms (for jets
    /// of u_n in xi, e.g. residual checks).
    HomogeneousEngine(const SymbolExpansion& expansion, int N, int extra_order = 0);

    int order() const noexcept { return N_; }
    int jet_order() const noexcept { return K_; }
    /// Highest payoff derivative entering any term.
    int payoff_derivatives() const noexcept { return jmax_.back(); }

    void kernel(cplx xi, TermKernel& out, ExpandWorkspace& ws) const;

private:
    const SymbolExpansion* e_;
    int N_, K_, extra_;
    std::vector<int> pmax_, jmax_;
    std::vector<FrozenCoeffs> coeffs_;
};

/// Values u_0..u_N (tau, xi) of the homogeneous engine.
std::vector<cplx> build_terms_homogeneous(const SymbolExpansion& expansion, const HatJet& hhat,
                                          double tau, int N, cplx xi);

/// Time-inhomogeneous engine: nested Gauss-Legendre in time over [t, T].
class InhomogeneousEngine {
public:
    InhomogeneousEngine(const SymbolExpansion& expansion, int N, double t, double T,
                        int quad_order = 24, int extra_order = 0);

    int order() const noexcept { return N_; }
    int quad_order() const noexcept { return q_; }
    int payoff_derivatives() const noexcept { return J_; }

    /// Jets of v_0..v_N (t, .) at xi of order `extra_order`.
    std::vector<CJet> term_jets(cplx xi, const HatJet& hhat) const;
    /// Jets (order `extra_order`) multiplying h^(j) in v_n: entry [n][j].
    std::vector<std::vector<CJet>> coefficient_jets(cplx xi) const;

private:
    struct Level {
        std::vector<double> s, w;
        std::vector<FrozenCoeffs> tail;   // int_s^T of the phi_0 coefficients
        std::vector<FrozenCoeffs> coeffs; // orders 1..N, stride N
    };

    using LinearTerms = std::vector<CJet>;  // coefficient jets of h^(j)

    void build_level(std::size_t depth, const std::vector<double>& parents);
    void node_terms(std::size_t depth, std::size_t node, int depth_left, const SymbolBlockJets& blocks,
                    std::vector<LinearTerms>& out) const;

    const SymbolExpansion* e_;
    int N_, q_, K_, extra_, J_;
    double t_, T_;
    FrozenCoeffs tail0_;
    std::vector<Level> levels_;
};

/// Values v_0..v_N (t, xi); raises a convergence error when doubling the
/// time-quadrature order moves any term by more than `tol` (relative).
std::vector<cplx> build_terms_inhomogeneous(const SymbolExpansion& expansion, const HatJet& hhat,
                                            double t, double T, int N, cplx xi, int quad_order = 24,
                                            double tol = 1e-8);

/// (d/dt + phi_0) v_n + sum_k B_k(i d/dxi)(phi_k v_{n-k}) at (t, xi) with
/// the time derivative by central differences of step h.
cplx ode_residual(const SymbolExpansion& expansion, const HatJet& hhat, int n, double t, double T,
                  cplx xi, double h = 1e-4);

}  // namespace levyx
