#include "levyx/expand.hpp"

#include <algorithm>
#include <cmath>

#include "levyx/error.hpp"
#include "levyx/quadrature.hpp"

namespace levyx {

namespace {

constexpr cplx I{0.0, 1.0};

cplx ipow(int m) {
    switch (m % 4) {
        case 0: return 1.0;
        case 1: return I;
        case 2: return -1.0;
        default: return -I;
    }
}

// Jets of h^, h^', ..., h^(count) at xi, each of order `order`.
std::vector<CJet> payoff_derivative_jets(const HatJet& hhat, cplx xi, int count, int order) {
    CJet h = hhat(xi, count + order);
    std::vector<CJet> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    for (int j = 0; j <= count; ++j) {
        out.push_back(h.truncated(order));
        if (j < count) h = h.derivative();
    }
    return out;
}

int max_degree(const SymbolExpansion& e, int n) {
    int d = 0;
    for (int k = 1; k <= n; ++k) d = std::max(d, e.basis[static_cast<std::size_t>(k)].degree());
    return d;
}

void check_order(const SymbolExpansion& e, int N) {
    require(N >= 0 && N <= e.order, ErrorKind::Config,
            "requested order " + std::to_string(N) + " exceeds the expansion order " +
                std::to_string(e.order));
}

}  // namespace

void TermPolynomial::reset(int pmax, int jmax) {
    pmax_ = pmax;
    jmax_ = jmax;
    const std::size_t n = static_cast<std::size_t>(pmax + 1) * static_cast<std::size_t>(jmax + 1);
    if (c_.size() < n) c_.resize(n);
    live_.assign(n, 0);
}

void TermPolynomial::add(int p, int j, const CJet& v) {
    const std::size_t i = index(p, j);
    if (live_[i]) {
        c_[i] += v;
    } else {
        c_[i] = v;
        live_[i] = 1;
    }
}

bool TermPolynomial::empty() const noexcept {
    return std::none_of(live_.begin(), live_.end(), [](unsigned char b) { return b != 0; });
}

cplx TermKernel::value(int n, double tau, const std::vector<cplx>& hd) const {
    const TermPolynomial& P = terms[static_cast<std::size_t>(n)];
    cplx acc = 0.0;
    for (int j = 0; j <= P.jmax(); ++j) {
        cplx poly = 0.0;
        for (int p = P.pmax(); p >= 0; --p) {
            poly *= tau;
            if (P.live(p, j)) poly += P.at(p, j)[0];
        }
        if (poly != 0.0) acc += poly * hd[static_cast<std::size_t>(j)];
    }
    return std::exp(tau * phi0[0]) * acc;
}

CJet TermKernel::jet(int n, double tau, const CJet& hhat, int order) const {
    const TermPolynomial& P = terms[static_cast<std::size_t>(n)];
    CJet acc = CJet::constant(0.0, order);
    CJet h = hhat;
    for (int j = 0; j <= P.jmax(); ++j) {
        CJet poly = CJet::constant(0.0, order);
        double tp = 1.0;
        for (int p = 0; p <= P.pmax(); ++p) {
            if (P.live(p, j)) poly += P.at(p, j).truncated(order) * cplx(tp);
            tp *= tau;
        }
        acc += poly * h.truncated(order);
        if (j < P.jmax()) h = h.derivative();
    }
    return exp(phi0.truncated(order) * cplx(tau)) * acc;
}

HomogeneousEngine::HomogeneousEngine(const SymbolExpansion& expansion, int N, int extra_order)
    : e_(&expansion), N_(N), extra_(extra_order) {
    check_order(expansion, N);
    require(expansion.time_homogeneous, ErrorKind::Config,
            "homogeneous engine needs time-constant coefficients; use the inhomogeneous engine");
    K_ = expansion.jet_budget(N) + extra_order;
    require(K_ <= kMaxJetOrder, ErrorKind::Budget,
            "order " + std::to_string(N) + " needs jets of order " + std::to_string(K_) +
                " > " + std::to_string(kMaxJetOrder));
    pmax_.assign(static_cast<std::size_t>(N) + 1, 0);
    jmax_.assign(static_cast<std::size_t>(N) + 1, 0);
    for (int n = 1; n <= N; ++n) {
        for (int k = 1; k <= n; ++k) {
            const int d = expansion.basis[static_cast<std::size_t>(k)].degree();
            pmax_[n] = std::max(pmax_[n], d + 1 + pmax_[n - k]);
            jmax_[n] = std::max(jmax_[n], d + jmax_[n - k]);
        }
    }
    coeffs_ = expansion.constant_coeffs;
}

void HomogeneousEngine::kernel(cplx xi, TermKernel& out, ExpandWorkspace& ws) const {
    const int order = std::min(K_ + 1, kMaxJetOrder);
    const SymbolBlockJets blocks = symbol_block_jets(*e_->measure, xi, order);
    out.xi = xi;
    out.phi0 = blocks.combine(coeffs_[0]);
    const CJet dphi0 = out.phi0.derivative();

    out.terms.resize(static_cast<std::size_t>(N_) + 1);
    out.terms[0].reset(0, 0);
    out.terms[0].add(0, 0, CJet::constant(1.0, K_));
    if (ws.tmp.size() < 2) ws.tmp.resize(2);

    for (int n = 1; n <= N_; ++n) {
        TermPolynomial& Pn = out.terms[static_cast<std::size_t>(n)];
        Pn.reset(pmax_[n], jmax_[n]);
        for (int k = 1; k <= n; ++k) {
            const BasisPolynomial& B = e_->basis[static_cast<std::size_t>(k)];
            const FrozenCoeffs& ck = coeffs_[static_cast<std::size_t>(k)];
            if (ck.gamma == 0.0 && ck.a == 0.0 && ck.jump == 0.0) continue;
            const CJet phik = blocks.combine(ck);
            const TermPolynomial& src = out.terms[static_cast<std::size_t>(n - k)];

            TermPolynomial* cur = &ws.tmp[0];
            TermPolynomial* nxt = &ws.tmp[1];
            cur->reset(src.pmax() + B.degree(), src.jmax() + B.degree());
            for (int p = 0; p <= src.pmax(); ++p)
                for (int j = 0; j <= src.jmax(); ++j)
                    if (src.live(p, j)) cur->add(p, j, phik * src.at(p, j));

            int cp = src.pmax(), cj = src.jmax();
            for (int m = 0; m <= B.degree(); ++m) {
                if (B[m] != 0.0) {
                    const cplx f = B[m] * ipow(m);
                    for (int p = 0; p <= cp; ++p)
                        for (int j = 0; j <= cj; ++j)
                            if (cur->live(p, j)) Pn.add(p + 1, j, cur->at(p, j) * (f / double(p + 1)));
                }
                if (m == B.degree()) break;
                // D = d/dxi + s phi0'
                nxt->reset(src.pmax() + B.degree(), src.jmax() + B.degree());
                for (int p = 0; p <= cp; ++p)
                    for (int j = 0; j <= cj; ++j) {
                        if (!cur->live(p, j)) continue;
                        const CJet& c = cur->at(p, j);
                        require(c.order() >= 1, ErrorKind::Budget, "jet budget exhausted in term recursion");
                        const int o = c.order() - 1;
                        nxt->add(p, j, c.derivative());
                        nxt->add(p, j + 1, c.truncated(o));
                        nxt->add(p + 1, j, (dphi0 * c).truncated(o));
                    }
                ++cp;
                ++cj;
                std::swap(cur, nxt);
            }
        }
    }
}

std::vector<cplx> build_terms_homogeneous(const SymbolExpansion& expansion, const HatJet& hhat,
                                          double tau, int N, cplx xi) {
    require(tau > 0.0, ErrorKind::Config, "time to maturity must be positive");
    HomogeneousEngine engine(expansion, N);
    TermKernel k;
    ExpandWorkspace ws;
    engine.kernel(xi, k, ws);
    const int J = engine.payoff_derivatives();
    const CJet h = hhat(xi, J);
    std::vector<cplx> hd(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) hd[static_cast<std::size_t>(j)] = h.derivative_value(j);
    std::vector<cplx> out;
    for (int n = 0; n <= N; ++n) out.push_back(k.value(n, tau, hd));
    return out;
}

// ---------------------------------------------------------------------------

InhomogeneousEngine::InhomogeneousEngine(const SymbolExpansion& expansion, int N, double t,
                                         double T, int quad_order, int extra_order)
    : e_(&expansion), N_(N), q_(quad_order), extra_(extra_order), t_(t), T_(T) {
    check_order(expansion, N);
    require(t < T, ErrorKind::Config, "start time must precede maturity");
    require(quad_order >= 1, ErrorKind::Config, "time quadrature order must be positive");
    K_ = expansion.jet_budget(N) + extra_order;
    require(K_ <= kMaxJetOrder, ErrorKind::Budget,
            "order " + std::to_string(N) + " needs jets of order " + std::to_string(K_) +
                " > " + std::to_string(kMaxJetOrder));
    J_ = expansion.jet_budget(N);

    double nodes = 0.0, width = 1.0;
    for (int d = 0; d < N; ++d) nodes += (width *= q_);
    require(nodes <= 2.0e6, ErrorKind::Budget,
            "nested time quadrature with order " + std::to_string(q_) + " at N = " +
                std::to_string(N) + " needs too many nodes; lower the quadrature order");

    const QuadratureRule root = gauss_legendre(q_, t, T);
    tail0_ = {};
    for (std::size_t i = 0; i < root.size(); ++i)
        tail0_ += root.weights[i] * expansion.coefficients(root.nodes[i])[0];
    if (N_ >= 1) {
        levels_.resize(static_cast<std::size_t>(N_));
        build_level(0, {t});
    }
}

void InhomogeneousEngine::build_level(std::size_t depth, const std::vector<double>& parents) {
    Level& L = levels_[depth];
    const QuadratureRule ref = gauss_legendre(q_, 0.0, 1.0);
    const std::size_t total = parents.size() * static_cast<std::size_t>(q_);
    L.s.reserve(total);
    L.w.reserve(total);
    L.tail.reserve(total);
    L.coeffs.reserve(total * static_cast<std::size_t>(N_));
    for (double a : parents) {
        const double len = T_ - a;
        for (int i = 0; i < q_; ++i) {
            const double s = a + len * ref.nodes[static_cast<std::size_t>(i)];
            L.s.push_back(s);
            L.w.push_back(len * ref.weights[static_cast<std::size_t>(i)]);
            const auto c = e_->coefficients(s);
            for (int k = 1; k <= N_; ++k) L.coeffs.push_back(c[static_cast<std::size_t>(k)]);
            FrozenCoeffs tail{};
            const double l2 = T_ - s;
            for (int r = 0; r < q_; ++r)
                tail += (l2 * ref.weights[static_cast<std::size_t>(r)]) *
                        e_->coefficients(s + l2 * ref.nodes[static_cast<std::size_t>(r)])[0];
            L.tail.push_back(tail);
        }
    }
    if (depth + 1 < levels_.size()) build_level(depth + 1, L.s);
}

// Q_0..Q_mmax at the node (depth-1 parent index `node`, or the root when
// depth == 0); each Q is a list of coefficient jets of h^(j).
void InhomogeneousEngine::node_terms(std::size_t depth, std::size_t node, int mmax,
                                     const SymbolBlockJets& blocks,
                                     std::vector<LinearTerms>& out) const {
    out.assign(static_cast<std::size_t>(mmax) + 1, {});
    out[0] = {CJet::constant(1.0, K_)};
    if (mmax == 0) return;

    const Level& L = levels_[depth];
    const std::size_t first = node * static_cast<std::size_t>(q_);
    std::vector<LinearTerms> child;
    for (std::size_t c = first; c < first + static_cast<std::size_t>(q_); ++c) {
        if (depth + 1 < levels_.size()) node_terms(depth + 1, c, mmax - 1, blocks, child);
        else child.assign(1, {CJet::constant(1.0, K_)});

        const CJet dtail = blocks.combine(L.tail[c]).derivative();
        for (int m = 1; m <= mmax; ++m) {
            LinearTerms& acc = out[static_cast<std::size_t>(m)];
            for (int k = 1; k <= m; ++k) {
                const FrozenCoeffs& ck = L.coeffs[c * static_cast<std::size_t>(N_) + static_cast<std::size_t>(k - 1)];
                if (ck.gamma == 0.0 && ck.a == 0.0 && ck.jump == 0.0) continue;
                const BasisPolynomial& B = e_->basis[static_cast<std::size_t>(k)];
                const CJet phik = blocks.combine(ck);
                LinearTerms cur;
                for (const CJet& q : child[static_cast<std::size_t>(m - k)]) cur.push_back(phik * q);
                for (int d = 0; d <= B.degree(); ++d) {
                    if (B[d] != 0.0) {
                        const cplx f = L.w[c] * B[d] * ipow(d);
                        if (acc.size() < cur.size()) acc.resize(cur.size(), CJet::constant(0.0, K_));
                        for (std::size_t j = 0; j < cur.size(); ++j) acc[j] += cur[j] * f;
                    }
                    if (d == B.degree()) break;
                    LinearTerms nxt(cur.size() + 1, CJet::constant(0.0, K_));
                    for (std::size_t j = 0; j < cur.size(); ++j) {
                        require(cur[j].order() >= 1, ErrorKind::Budget,
                                "jet budget exhausted in term recursion");
                        const int o = cur[j].order() - 1;
                        nxt[j] += cur[j].derivative() + (dtail * cur[j]).truncated(o);
                        nxt[j + 1] += cur[j].truncated(o);
                    }
                    cur = std::move(nxt);
                }
            }
        }
    }
}

std::vector<std::vector<CJet>> InhomogeneousEngine::coefficient_jets(cplx xi) const {
    const int order = std::min(K_ + 1, kMaxJetOrder);
    const SymbolBlockJets blocks = symbol_block_jets(*e_->measure, xi, order);
    std::vector<LinearTerms> Q;
    if (N_ >= 1) node_terms(0, 0, N_, blocks, Q);
    else Q.assign(1, {CJet::constant(1.0, K_)});

    const CJet E = exp(blocks.combine(tail0_).truncated(extra_));
    std::vector<std::vector<CJet>> out(static_cast<std::size_t>(N_) + 1);
    for (int n = 0; n <= N_; ++n)
        for (const CJet& q : Q[static_cast<std::size_t>(n)]) out[static_cast<std::size_t>(n)].push_back(E * q.truncated(extra_));
    return out;
}

std::vector<CJet> InhomogeneousEngine::term_jets(cplx xi, const HatJet& hhat) const {
    const auto C = coefficient_jets(xi);
    const std::vector<CJet> hd = payoff_derivative_jets(hhat, xi, J_, extra_);
    std::vector<CJet> out;
    for (const auto& row : C) {
        CJet acc = CJet::constant(0.0, extra_);
        for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * hd[j];
        out.push_back(acc);
    }
    return out;
}

std::vector<cplx> build_terms_inhomogeneous(const SymbolExpansion& expansion, const HatJet& hhat,
                                            double t, double T, int N, cplx xi, int quad_order,
                                            double tol) {
    const InhomogeneousEngine lo(expansion, N, t, T, quad_order);
    const InhomogeneousEngine hi(expansion, N, t, T, 2 * quad_order);
    const auto a = lo.term_jets(xi, hhat), b = hi.term_jets(xi, hhat);
    double scale = 0.0;
    for (const auto& v : b) scale += std::abs(v[0]);
    std::vector<cplx> out;
    for (int n = 0; n <= N; ++n) {
        const double diff = std::abs(a[static_cast<std::size_t>(n)][0] - b[static_cast<std::size_t>(n)][0]);
        require(diff <= tol * scale || diff == 0.0, ErrorKind::Convergence,
                "time quadrature of term " + std::to_string(n) + " did not converge (order " +
                    std::to_string(quad_order) + " vs " + std::to_string(2 * quad_order) +
                    " differ by " + std::to_string(diff) + ")");
        out.push_back(b[static_cast<std::size_t>(n)][0]);
    }
    return out;
}

cplx ode_residual(const SymbolExpansion& expansion, const HatJet& hhat, int n, double t, double T,
                  cplx xi, double h) {
    check_order(expansion, n);
    const int extra = max_degree(expansion, n);

    auto jets_at = [&](double s, int extra_order) -> std::vector<CJet> {
        if (expansion.time_homogeneous) {
            HomogeneousEngine engine(expansion, n, extra_order);
            TermKernel k;
            ExpandWorkspace ws;
            engine.kernel(xi, k, ws);
            const CJet hj = hhat(xi, engine.payoff_derivatives() + extra_order);
            std::vector<CJet> out;
            for (int m = 0; m <= n; ++m) out.push_back(k.jet(m, T - s, hj, extra_order));
            return out;
        }
        return InhomogeneousEngine(expansion, n, s, T, 24, extra_order).term_jets(xi, hhat);
    };

    const auto up = jets_at(t + h, 0), down = jets_at(t - h, 0);
    const auto mid = jets_at(t, extra);
    const cplx dt = (up[static_cast<std::size_t>(n)][0] - down[static_cast<std::size_t>(n)][0]) / (2.0 * h);

    const SymbolBlockJets blocks = symbol_block_jets(*expansion.measure, xi, std::max(extra, 1));
    const auto c = expansion.coefficients(t);
    cplx r = dt + blocks.combine(c[0])[0] * mid[static_cast<std::size_t>(n)][0];
    for (int k = 1; k <= n; ++k) {
        const CJet g = blocks.combine(c[static_cast<std::size_t>(k)]) * mid[static_cast<std::size_t>(n - k)];
        r += apply_basis_operator(expansion.basis[static_cast<std::size_t>(k)], g);
    }
    return r;
}

}  // namespace levyx
