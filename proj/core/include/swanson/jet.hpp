#pragma once

// Truncated Taylor arithmetic. A Jet of order K at x holds the coefficients
// t_k of f(x + h) = sum_k t_k h^k for k = 0..K, so f^(k)(x) = k! t_k.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "swanson/error.hpp"

namespace swanson {

inline constexpr int kMaxJetOrder = 10;

class Jet {
public:
    Jet() = default;

    /// Constant function of the given order.
    explicit Jet(double value, int order = 0) : order_(checked(order)) {
        c_[0] = value;
    }

    /// The identity function h -> x + h.
    static Jet variable(double x, int order) {
        Jet j(x, order);
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const noexcept { return order_; }
    double value() const noexcept { return c_[0]; }

    double coeff(int k) const noexcept { return k <= order_ ? c_[k] : 0.0; }
    double& coeff_ref(int k) noexcept { return c_[k]; }

    /// k-th derivative of the represented function at the base point.
    double derivative(int k) const noexcept {
        if (k > order_) return 0.0;
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f * c_[k];
    }

    /// Jet of f' (order drops by one; an order-0 jet yields an order-0 zero).
    Jet differentiated() const {
        Jet r(0.0, std::max(order_ - 1, 0));
        for (int k = 0; k < order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
        return r;
    }

    Jet differentiated(int times) const {
        Jet r = *this;
        for (int i = 0; i < times; ++i) r = r.differentiated();
        return r;
    }

    Jet truncated(int order) const {
        Jet r = *this;
        r.order_ = std::min(order_, checked(order));
        for (int k = r.order_ + 1; k <= kMaxJetOrder; ++k) r.c_[k] = 0.0;
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (int k = 0; k <= order_; ++k) r.c_[k] = -c_[k];
        return r;
    }

    Jet& operator+=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        clear_tail();
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        clear_tail();
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    Jet& operator+=(double s) { c_[0] += s; return *this; }
    Jet& operator-=(double s) { c_[0] -= s; return *this; }
    Jet& operator*=(double s) {
        for (int k = 0; k <= order_; ++k) c_[k] *= s;
        return *this;
    }
    Jet& operator/=(double s) {
        for (int k = 0; k <= order_; ++k) c_[k] /= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(0.0, std::min(a.order_, b.order_));
        for (int k = 0; k <= r.order_; ++k) {
            double s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet q(0.0, std::min(a.order_, b.order_));
        const double b0 = b.c_[0];
        for (int k = 0; k <= q.order_; ++k) {
            double s = a.c_[k];
            for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
            q.c_[k] = s / b0;
        }
        return q;
    }

    friend Jet operator/(double s, const Jet& b) { return Jet(s, b.order_) / b; }

    friend Jet exp(const Jet& g) {
        Jet f(std::exp(g.c_[0]), g.order_);
        for (int k = 1; k <= g.order_; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += j * g.c_[j] * f.c_[k - j];
            f.c_[k] = s / k;
        }
        return f;
    }

    friend Jet log(const Jet& g) {
        Jet f(std::log(g.c_[0]), g.order_);
        for (int k = 1; k <= g.order_; ++k) {
            double s = g.c_[k];
            for (int j = 1; j < k; ++j) s -= j * f.c_[j] * g.c_[k - j] / k;
            f.c_[k] = s / g.c_[0];
        }
        return f;
    }

    /// g^p for real p; requires g(x) > 0 unless p is a non-negative integer.
    friend Jet pow(const Jet& g, double p) {
        Jet f(std::pow(g.c_[0], p), g.order_);
        const double g0 = g.c_[0];
        for (int k = 1; k <= g.order_; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += ((p + 1.0) * j - k) * g.c_[j] * f.c_[k - j];
            f.c_[k] = s / (k * g0);
        }
        return f;
    }

    friend Jet sqrt(const Jet& g) { return pow(g, 0.5); }

private:
    static int checked(int order) {
        if (order < 0 || order > kMaxJetOrder)
            fail(Errc::jet_order_exceeded,
                 "jet order " + std::to_string(order) + " outside [0, " +
                     std::to_string(kMaxJetOrder) + "]");
        return order;
    }

    void clear_tail() {
        for (int k = order_ + 1; k <= kMaxJetOrder; ++k) c_[k] = 0.0;
    }

    std::array<double, kMaxJetOrder + 1> c_{};
    int order_ = 0;
};

// Scalar overloads so generic code can be written once for double and Jet.
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

} // namespace swanson
