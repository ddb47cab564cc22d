#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace diffsym {

/// Dense univariate polynomial over a field, lowest degree first.
///
/// The zero coefficient is kept as a prototype so the zero polynomial still
/// knows its coefficient field.
template <FieldElement T>
class Poly {
public:
    Poly() = default;
    explicit Poly(T zero) : zero_(std::move(zero)) {}
    Poly(T zero, std::vector<T> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const T& c) { return Poly(c.zero(), {c}); }
    /// c * x^k.
    static Poly monomial(const T& c, int k) {
        std::vector<T> v(static_cast<std::size_t>(k) + 1, c.zero());
        v[static_cast<std::size_t>(k)] = c;
        return Poly(c.zero(), std::move(v));
    }
    static Poly x(const T& like) { return monomial(like.one(), 1); }

    const T& coeff_zero() const { return zero_; }
    const std::vector<T>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    T coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : zero_;
    }
    T lc() const { return c_.empty() ? zero_ : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == zero_.one(); }

    Poly zero() const { return Poly(zero_); }
    Poly one() const { return constant(zero_.one()); }
    Poly from_integer(long n) const { return constant(zero_.from_integer(n)); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(a.zero_, std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(a.zero_, std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly(a.zero_);
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return Poly(a.zero_, std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly scaled(const T& s) const {
        if (s.is_zero()) return zero();
        Poly r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    /// Quotient and remainder; the divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& b) const {
        if (b.is_zero()) throw DivisionByZero("polynomial");
        if (degree() < b.degree()) return {zero(), *this};
        std::vector<T> rem = c_;
        std::vector<T> q(static_cast<std::size_t>(degree() - b.degree() + 1), zero_);
        const T lead_inv = b.lc().inv();
        const std::size_t shift = b.c_.size() - 1;
        for (std::size_t k = rem.size() - 1;; --k) {
            if (!rem[k].is_zero()) {
                const T c = rem[k] * lead_inv;
                q[k - shift] = c;
                for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k - shift + j] = rem[k - shift + j] - c * b.c_[j];
            }
            if (k == shift) break;
        }
        return {Poly(zero_, std::move(q)), Poly(zero_, std::move(rem))};
    }

    /// Division that must leave no remainder.
    Poly exact_div(const Poly& b) const {
        auto [q, r] = divmod(b);
        if (!r.is_zero()) throw Error("inexact polynomial division");
        return q;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inv());
    }

    /// Formal derivative with respect to the variable.
    Poly formal_derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<T> r(c_.size() - 1, zero_);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * zero_.from_integer(static_cast<long>(i));
        return Poly(zero_, std::move(r));
    }

    T eval(const T& x) const {
        T acc = zero_;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly pow(int e) const {
        Poly r = one(), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// Applies a map to every coefficient.
    template <class F>
    Poly map_coeffs(F&& f) const {
        std::vector<T> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(f(x));
        return Poly(zero_, std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    T zero_{};
    std::vector<T> c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <FieldElement T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    if ((a.degree() == 0 && !b.is_zero()) || (b.degree() == 0 && !a.is_zero())) return a.one();
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

/// Squarefree decomposition p = lc * prod q_j^j (Yun's algorithm).
///
/// Every returned q_j is monic, squarefree, nonconstant and pairwise coprime
/// with the others; multiplicities are listed in increasing order.
template <FieldElement T>
std::vector<std::pair<Poly<T>, int>> squarefree_decompose(const Poly<T>& p) {
    if (p.is_zero()) throw PreconditionError("squarefree decomposition of the zero polynomial");
    std::vector<std::pair<Poly<T>, int>> out;
    const Poly<T> f = p.monic();
    if (f.degree() == 0) return out;
    const Poly<T> df = f.formal_derivative();
    Poly<T> a = gcd(f, df);
    Poly<T> b = f.exact_div(a);
    Poly<T> c = df.exact_div(a);
    Poly<T> d = c - b.formal_derivative();
    for (int j = 1; b.degree() > 0; ++j) {
        Poly<T> g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, j);
        b = b.exact_div(g);
        c = d.exact_div(g);
        d = c - b.formal_derivative();
    }
    return out;
}

}  // namespace diffsym
