#pragma once

// Truncated Taylor series ("jets") with propagated derivatives.
//
// A Jet<T> of order K at base point z0 stores c_0..c_K with
// c_j = f^(j)(z0) / j!. Every operation below is exact for the first
// K+1 Taylor coefficients of the composite function; combining jets of
// different orders yields the smaller order.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>

#include "levyx/error.hpp"

#ifndef LEVYX_MAX_JET_ORDER
#define LEVYX_MAX_JET_ORDER 12
#endif

namespace levyx {

inline constexpr int kMaxJetOrder = LEVYX_MAX_JET_ORDER;

template <class T>
class Jet {
public:
    using value_type = T;

    Jet() = default;

    explicit Jet(int order) : order_(checked(order)) {}

    static Jet constant(T value, int order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    /// The identity function z -> z expanded at z0.
    static Jet variable(T z0, int order) {
        Jet j(order);
        j.c_[0] = z0;
        if (order >= 1) j.c_[1] = T(1);
        return j;
    }

    int order() const noexcept { return order_; }

    const T& operator[](int j) const noexcept { return c_[static_cast<std::size_t>(j)]; }
    T& operator[](int j) noexcept { return c_[static_cast<std::size_t>(j)]; }

    T value() const noexcept { return c_[0]; }

    /// j-th derivative at the base point: j! * c_j.
    T derivative_value(int j) const {
        require(j >= 0 && j <= order_, ErrorKind::Budget,
                "jet of order " + std::to_string(order_) + " has no derivative of order " +
                    std::to_string(j));
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        return c_[static_cast<std::size_t>(j)] * fact;
    }

    /// Jet of f' (order drops by one). A zeroth-order jet differentiates to
    /// an empty, order -1 object which is rejected.
    Jet derivative() const {
        require(order_ >= 1, ErrorKind::Budget, "cannot differentiate a jet of order 0");
        Jet d(order_ - 1);
        for (int j = 0; j < order_; ++j) d.c_[j] = c_[j + 1] * static_cast<double>(j + 1);
        return d;
    }

    Jet truncated(int order) const {
        Jet t(std::min(order, order_));
        std::copy_n(c_.begin(), t.order_ + 1, t.c_.begin());
        return t;
    }

    /// Evaluate the truncated polynomial at base-point offset h.
    T eval_offset(T h) const {
        T acc = c_[order_];
        for (int j = order_ - 1; j >= 0; --j) acc = acc * h + c_[j];
        return acc;
    }

    Jet& operator+=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int j = 0; j <= order_; ++j) c_[j] += o.c_[j];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int j = 0; j <= order_; ++j) c_[j] -= o.c_[j];
        return *this;
    }
    Jet& operator+=(T s) {
        c_[0] += s;
        return *this;
    }
    Jet& operator-=(T s) {
        c_[0] -= s;
        return *this;
    }
    Jet& operator*=(T s) {
        for (int j = 0; j <= order_; ++j) c_[j] *= s;
        return *this;
    }
    Jet& operator/=(T s) {
        for (int j = 0; j <= order_; ++j) c_[j] /= s;
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        *this = *this * o;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        *this = *this / o;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, T s) { return a += s; }
    friend Jet operator+(T s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, T s) { return a -= s; }
    friend Jet operator-(T s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, T s) { return a *= s; }
    friend Jet operator*(T s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, T s) { return a /= s; }
    friend Jet operator-(const Jet& a) {
        Jet r(a.order_);
        for (int j = 0; j <= a.order_; ++j) r.c_[j] = -a.c_[j];
        return r;
    }

    // Cauchy product.
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(std::min(a.order_, b.order_));
        for (int k = 0; k <= r.order_; ++k) {
            T acc{};
            for (int j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
            r.c_[k] = acc;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        require(b.c_[0] != T(0), ErrorKind::Pole, "jet division by a function vanishing at the base point");
        Jet q(std::min(a.order_, b.order_));
        for (int k = 0; k <= q.order_; ++k) {
            T acc = a.c_[k];
            for (int j = 0; j < k; ++j) acc -= q.c_[j] * b.c_[k - j];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }
    friend Jet operator/(T s, const Jet& b) { return constant(s, b.order_) / b; }

    friend Jet exp(const Jet& a) {
        using std::exp;
        Jet r(a.order_);
        r.c_[0] = exp(a.c_[0]);
        for (int k = 1; k <= a.order_; ++k) {
            T acc{};
            for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
            r.c_[k] = acc / static_cast<double>(k);
        }
        return r;
    }

    friend Jet log(const Jet& a) {
        using std::log;
        require(a.c_[0] != T(0), ErrorKind::Pole, "jet logarithm at a zero of its argument");
        Jet r(a.order_);
        r.c_[0] = log(a.c_[0]);
        for (int k = 1; k <= a.order_; ++k) {
            T acc = a.c_[k];
            for (int j = 1; j < k; ++j)
                acc -= static_cast<double>(j) / static_cast<double>(k) * r.c_[j] * a.c_[k - j];
            r.c_[k] = acc / a.c_[0];
        }
        return r;
    }

    friend Jet pow(const Jet& a, double p) {
        using std::pow;
        require(a.c_[0] != T(0), ErrorKind::Pole, "jet power at a zero of its base");
        Jet r(a.order_);
        r.c_[0] = pow(a.c_[0], p);
        for (int k = 1; k <= a.order_; ++k) {
            T acc{};
            for (int j = 1; j <= k; ++j)
                acc += ((p + 1.0) * j - k) * a.c_[j] * r.c_[k - j];
            r.c_[k] = acc / (static_cast<double>(k) * a.c_[0]);
        }
        return r;
    }

    friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

    friend Jet sin(const Jet& a) { return sincos(a).first; }
    friend Jet cos(const Jet& a) { return sincos(a).second; }

    friend std::pair<Jet, Jet> sincos(const Jet& a) {
        using std::cos;
        using std::sin;
        Jet s(a.order_), c(a.order_);
        s.c_[0] = sin(a.c_[0]);
        c.c_[0] = cos(a.c_[0]);
        for (int k = 1; k <= a.order_; ++k) {
            T as{}, ac{};
            for (int j = 1; j <= k; ++j) {
                as += static_cast<double>(j) * a.c_[j] * c.c_[k - j];
                ac += static_cast<double>(j) * a.c_[j] * s.c_[k - j];
            }
            s.c_[k] = as / static_cast<double>(k);
            c.c_[k] = -ac / static_cast<double>(k);
        }
        return {s, c};
    }

private:
    static int checked(int order) {
        require(order >= 0 && order <= kMaxJetOrder, ErrorKind::Budget,
                "jet order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxJetOrder) + "]");
        return order;
    }

    std::array<T, kMaxJetOrder + 1> c_{};
    int order_ = 0;
};

using cplx = std::complex<double>;
using CJet = Jet<cplx>;
using RJet = Jet<double>;

/// Jet of f at z0 for any callable generic over Jet arithmetic.
template <class F, class T>
auto jet_lift(F&& f, T z0, int order) {
    return f(Jet<T>::variable(z0, order));
}

}  // namespace levyx
