#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "printing.hpp"

namespace diffsym {

/// Simple radical extension K(g) with g^n = a, carrying the unique extension
/// of the base derivation: D(g) = D(a)/(n a) * g.
///
/// The descriptor itself does not decide irreducibility of z^n - a; use
/// kummer_extend() (scalars.hpp) for the checked construction over Q(w)(t),
/// or radical_tower() for certified two-step towers.
template <FieldElement B>
class KummerField {
public:
    KummerField(B radicand, int degree, std::string name, std::optional<B> root_of_unity)
        : radicand_(std::move(radicand)), degree_(degree), name_(std::move(name)), root_of_unity_(std::move(root_of_unity)) {
        if (degree_ < 1) throw PreconditionError("radical degree must be positive");
        if (radicand_.is_zero()) throw PreconditionError("radicand must be nonzero");
        if constexpr (DifferentialElement<B>) {
            rate_ = radicand_.derive() * (radicand_ * radicand_.from_integer(degree_)).inv();
            // D(g^n) = n g^(n-1) D(g) = n * rate * a must reproduce D(a).
            if (!(rate_ * radicand_ * radicand_.from_integer(degree_) == radicand_.derive()))
                throw Error("derivation extension is inconsistent with the radicand");
        } else {
            rate_ = radicand_.zero();
        }
    }

    const B& radicand() const { return radicand_; }
    int degree() const { return degree_; }
    const std::string& name() const { return name_; }
    /// D(g)/g.
    const B& rate() const { return rate_; }
    /// Primitive n-th root of unity of the base, when one is available.
    const std::optional<B>& root_of_unity() const { return root_of_unity_; }
    B base_zero() const { return radicand_.zero(); }

private:
    B radicand_;
    int degree_;
    std::string name_;
    std::optional<B> root_of_unity_;
    B rate_{};
};

template <FieldElement B>
using KummerFieldPtr = std::shared_ptr<const KummerField<B>>;

/// Element sum_i c_i g^i of a Kummer extension, 0 <= i < n.
template <FieldElement B>
class Kummer {
public:
    using Base = B;

    Kummer() = default;
    explicit Kummer(KummerFieldPtr<B> field)
        : field_(std::move(field)), c_(static_cast<std::size_t>(field_->degree()), field_->base_zero()) {}
    Kummer(KummerFieldPtr<B> field, std::vector<B> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        if (c_.size() != static_cast<std::size_t>(field_->degree())) throw MismatchError("Kummer coefficient count");
    }

    /// The generator g.
    static Kummer generator(const KummerFieldPtr<B>& field) {
        Kummer r(field);
        if (field->degree() == 1)
            r.c_[0] = field->radicand();
        else
            r.c_[1] = field->base_zero().one();
        return r;
    }

    const KummerFieldPtr<B>& field() const { return field_; }
    const std::vector<B>& coeffs() const { return c_; }
    const B& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    int degree() const { return field_->degree(); }

    B base_zero() const { return field_->base_zero(); }
    Kummer embed_base(const B& b) const {
        Kummer r(field_);
        r.c_[0] = b;
        return r;
    }
    Kummer zero() const { return Kummer(field_); }
    Kummer one() const { return embed_base(base_zero().one()); }
    Kummer from_integer(long n) const { return embed_base(base_zero().from_integer(n)); }
    Kummer from_rational(const Rational& q) const { return embed_base(base_zero().from_rational(q)); }
    Kummer gen() const { return generator(field_); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool derivation_is_zero() const { return base_zero().derivation_is_zero(); }
    /// True when the element lies in the base field.
    bool in_base() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    friend Kummer operator+(const Kummer& a, const Kummer& b) {
        Kummer r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        return r;
    }
    friend Kummer operator-(const Kummer& a, const Kummer& b) {
        Kummer r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
        return r;
    }
    friend Kummer operator-(const Kummer& a) {
        Kummer r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Kummer operator*(const Kummer& a, const Kummer& b) {
        const auto n = a.c_.size();
        Kummer r(a.field_);
        const B& rad = a.field_->radicand();
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b.c_[j].is_zero()) continue;
                const B p = a.c_[i] * b.c_[j];
                if (i + j < n)
                    r.c_[i + j] = r.c_[i + j] + p;
                else
                    r.c_[i + j - n] = r.c_[i + j - n] + p * rad;
            }
        }
        return r;
    }
    friend bool operator==(const Kummer& a, const Kummer& b) { return a.c_ == b.c_; }

    /// Multiplication-by-this matrix in the basis 1, g, ..., g^(n-1).
    Matrix<B> multiplication_matrix() const {
        const auto n = c_.size();
        Matrix<B> m(n, n, base_zero());
        Kummer basis = one();
        const Kummer g = gen();
        for (std::size_t j = 0; j < n; ++j) {
            const Kummer col = *this * basis;
            for (std::size_t i = 0; i < n; ++i) m(i, j) = col.c_[i];
            basis = basis * g;
        }
        return m;
    }

    Kummer inv() const {
        if (is_zero()) throw DivisionByZero("Kummer element");
        if (in_base()) return embed_base(c_[0].inv());
        std::vector<B> e(c_.size(), base_zero());
        e[0] = base_zero().one();
        auto sol = solve(multiplication_matrix(), e);
        if (!sol.particular || !sol.kernel.empty()) throw DivisionByZero("non-invertible Kummer element (reducible radicand)");
        return Kummer(field_, std::move(*sol.particular));
    }

    /// D(sum c_i g^i) = sum (D c_i + i * rate * c_i) g^i.
    Kummer derive() const
        requires DifferentialElement<B>
    {
        Kummer r(field_);
        const B& rate = field_->rate();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            B d = c_[i].derive();
            if (i > 0) d = d + c_[i] * rate * base_zero().from_integer(static_cast<long>(i));
            r.c_[i] = d;
        }
        return r;
    }

    /// Image under g -> w^j g, w the stored primitive n-th root of unity.
    Kummer conjugate(int j) const {
        if (!field_->root_of_unity()) throw PreconditionError("no root of unity available for conjugation");
        const B& w = *field_->root_of_unity();
        Kummer r = *this;
        B f = base_zero().one();
        const B step = power(w, j);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            r.c_[i] = c_[i] * f;
            f = f * step;
        }
        return r;
    }

    /// Product of all conjugates; lies in the base field.
    B norm() const {
        Kummer acc = one();
        for (int j = 0; j < degree(); ++j) acc = acc * conjugate(j);
        if (!acc.in_base()) throw Error("norm did not land in the base field");
        return acc.c_[0];
    }

    bool is_compound() const {
        int terms = 0;
        for (const auto& x : c_) {
            if (x.is_zero()) continue;
            if (++terms > 1 || x.is_compound()) return true;
        }
        return false;
    }

    std::string str() const {
        std::vector<std::string> terms;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            terms.push_back(detail::format_term(c_[i].str(), c_[i].is_compound(),
                                                detail::power_string(field_->name(), static_cast<long>(i))));
        }
        return detail::join_terms(terms);
    }

    std::optional<Kummer> symbol(std::string_view name) const {
        if (name == field_->name()) return gen();
        if (auto b = base_zero().symbol(name)) return embed_base(*b);
        return std::nullopt;
    }

private:
    KummerFieldPtr<B> field_;
    std::vector<B> c_;
};

}  // namespace diffsym
