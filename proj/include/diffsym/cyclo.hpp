#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace diffsym {

namespace qpoly {

// Dense polynomials over Q as coefficient vectors, lowest degree first.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw DivisionByZero("polynomial over Q");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    QPoly q(a.size() - b.size() + 1);
    const Rational lead_inv = 1 / b.back();
    const std::size_t shift = b.size() - 1;
    for (std::size_t k = a.size() - 1;; --k) {
        const Rational c = a[k] * lead_inv;
        q[k - shift] = c;
        if (c != 0) {
            for (std::size_t j = 0; j < b.size(); ++j) a[k - shift + j] -= c * b[j];
        }
        if (k == shift) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

}  // namespace qpoly

/// The cyclotomic field Q(w) for a primitive m-th root of unity w.
class CycloField {
public:
    explicit CycloField(int m) : m_(m) {
        if (m < 1) throw PreconditionError("cyclotomic conductor must be positive");
        modulus_ = cyclotomic_polynomial(m);
        degree_ = static_cast<int>(modulus_.size()) - 1;
        // x^k mod Phi_m for the exponents a product of reduced elements can reach.
        for (int k = 0; k <= 2 * degree_; ++k) {
            qpoly::QPoly xk(static_cast<std::size_t>(k) + 1);
            xk[static_cast<std::size_t>(k)] = 1;
            auto r = qpoly::divmod(xk, modulus_).second;
            r.resize(static_cast<std::size_t>(degree_));
            power_table_.push_back(std::move(r));
        }
    }

    int m() const { return m_; }
    int degree() const { return degree_; }
    const qpoly::QPoly& modulus() const { return modulus_; }

    /// Reduced form of x^k, k <= 2*degree.
    const std::vector<Rational>& reduced_power(int k) const { return power_table_[static_cast<std::size_t>(k)]; }

    /// Phi_m computed by exact division of x^m - 1 by Phi_d for the proper divisors d.
    static qpoly::QPoly cyclotomic_polynomial(int m) {
        static std::mutex mu;
        static std::map<int, qpoly::QPoly> cache;
        {
            std::lock_guard lock(mu);
            if (auto it = cache.find(m); it != cache.end()) return it->second;
        }
        qpoly::QPoly num(static_cast<std::size_t>(m) + 1);
        num[0] = -1;
        num[static_cast<std::size_t>(m)] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto [q, r] = qpoly::divmod(num, cyclotomic_polynomial(d));
            if (!r.empty()) throw Error("cyclotomic polynomial does not divide x^m - 1");
            num = std::move(q);
        }
        std::lock_guard lock(mu);
        cache.emplace(m, num);
        return num;
    }

private:
    int m_;
    int degree_ = 0;
    qpoly::QPoly modulus_;
    std::vector<std::vector<Rational>> power_table_;
};

using CycloFieldPtr = std::shared_ptr<const CycloField>;

inline CycloFieldPtr make_cyclo_field(int m) {
    return std::make_shared<const CycloField>(m);
}

/// Element of Q(w), stored reduced modulo Phi_m.
class Cyclo {
public:
    Cyclo() = default;
    explicit Cyclo(CycloFieldPtr field) : field_(std::move(field)), c_(static_cast<std::size_t>(field_->degree())) {}
    Cyclo(CycloFieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        reduce_in_place();
    }

    static Cyclo rational(CycloFieldPtr field, const Rational& q) {
        Cyclo r(std::move(field));
        if (!r.c_.empty()) r.c_[0] = q;
        return r;
    }

    /// w^k for any integer k.
    static Cyclo omega_power(const CycloFieldPtr& field, long k) {
        const long m = field->m();
        long e = ((k % m) + m) % m;
        std::vector<Rational> v(static_cast<std::size_t>(e) + 1);
        v[static_cast<std::size_t>(e)] = 1;
        return Cyclo(field, std::move(v));
    }

    const CycloFieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Cyclo zero() const { return Cyclo(field_); }
    Cyclo one() const { return rational(field_, 1); }
    Cyclo from_integer(long n) const { return rational(field_, n); }
    Cyclo from_rational(const Rational& q) const { return rational(field_, q); }
    Cyclo omega() const { return omega_power(field_, 1); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_one() const { return *this == one(); }

    /// True when the element lies in Q.
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational rational_value() const { return c_.empty() ? Rational(0) : c_[0]; }

    Cyclo derive() const { return zero(); }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        check_same(a, b);
        Cyclo r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        check_same(a, b);
        Cyclo r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend Cyclo operator-(const Cyclo& a) {
        Cyclo r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        check_same(a, b);
        const auto n = a.c_.size();
        Cyclo r(a.field_);
        if (a.is_rational() && b.is_rational()) {
            if (n) r.c_[0] = a.c_[0] * b.c_[0];
            return r;
        }
        std::vector<Rational> prod(n == 0 ? 0 : 2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        for (std::size_t k = 0; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            if (k < n) {
                r.c_[k] += prod[k];
            } else {
                const auto& red = a.field_->reduced_power(static_cast<int>(k));
                for (std::size_t i = 0; i < n; ++i)
                    if (red[i] != 0) r.c_[i] += prod[k] * red[i];
            }
        }
        return r;
    }

    /// Inverse via the extended Euclidean algorithm against Phi_m.
    Cyclo inv() const {
        if (is_zero()) throw DivisionByZero("cyclotomic element");
        if (is_rational()) return rational(field_, 1 / c_[0]);
        using qpoly::QPoly;
        QPoly r0 = field_->modulus(), r1 = c_;
        qpoly::trim(r1);
        QPoly s0, s1{Rational(1)};
        while (!r1.empty()) {
            auto [q, r] = qpoly::divmod(r0, r1);
            QPoly s = qpoly::sub(s0, qpoly::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r0 is a nonzero constant since Phi_m is irreducible.
        if (r0.size() != 1) throw Error("cyclotomic modulus is not irreducible");
        for (auto& x : s0) x /= r0[0];
        return Cyclo(field_, s0);
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        if (a.field_ != b.field_ && (!a.field_ || !b.field_ || a.field_->m() != b.field_->m())) return false;
        return a.c_ == b.c_;
    }

    bool is_compound() const { return term_count() > 1; }
    bool derivation_is_zero() const { return true; }

    /// Number of nonzero terms in the power basis.
    int term_count() const {
        int n = 0;
        for (const auto& x : c_)
            if (x != 0) ++n;
        return n;
    }

    /// Canonical text form, e.g. "-1-w" or "1/2*w^2".
    std::string str() const {
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            const Rational& q = c_[k];
            if (q == 0) continue;
            const bool neg = q < 0;
            const Rational a = neg ? Rational(-q) : q;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? "-" : "+";
            }
            if (k == 0) {
                out += a.get_str();
            } else {
                if (a != 1) out += a.get_str() + "*";
                out += "w";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }

    std::optional<Cyclo> symbol(std::string_view name) const {
        if (name == "w") return omega();
        return std::nullopt;
    }

private:
    static void check_same(const Cyclo& a, const Cyclo& b) {
        if (a.field_ != b.field_ && a.field_->m() != b.field_->m())
            throw MismatchError("cyclotomic elements from different fields");
    }

    void reduce_in_place() {
        const auto n = static_cast<std::size_t>(field_->degree());
        qpoly::trim(c_);
        if (c_.size() > n) c_ = qpoly::divmod(c_, field_->modulus()).second;
        c_.resize(n);
    }

    CycloFieldPtr field_;
    std::vector<Rational> c_;
};

}  // namespace diffsym
