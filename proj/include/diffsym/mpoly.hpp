#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "printing.hpp"

namespace diffsym {

using Exponents = std::vector<int>;

template <FieldElement C>
using TermMap = std::map<Exponents, C>;

/// Laurent polynomial ring C[x_0^+-1, ..., x_{n-1}^+-1] with a derivation that
/// extends the one on C and sends each x_i to a prescribed element.
template <FieldElement C>
class MPolyRing {
public:
    MPolyRing(C coeff_zero, std::vector<std::string> names, std::vector<TermMap<C>> images)
        : zero_(std::move(coeff_zero)), names_(std::move(names)), images_(std::move(images)) {
        if (images_.size() != names_.size()) throw MismatchError("one derivation image per variable is required");
        for (const auto& img : images_)
            for (const auto& [e, c] : img)
                if (e.size() != names_.size()) throw MismatchError("derivation image exponent length");
    }

    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const C& coeff_zero() const { return zero_; }
    const TermMap<C>& image(std::size_t i) const { return images_[i]; }

private:
    C zero_;
    std::vector<std::string> names_;
    std::vector<TermMap<C>> images_;
};

template <FieldElement C>
using MPolyRingPtr = std::shared_ptr<const MPolyRing<C>>;

template <FieldElement C>
class MPoly {
public:
    using Coeff = C;

    MPoly() = default;
    explicit MPoly(MPolyRingPtr<C> ring) : ring_(std::move(ring)) {}
    MPoly(MPolyRingPtr<C> ring, TermMap<C> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { prune(); }

    static MPoly variable(const MPolyRingPtr<C>& ring, std::size_t i) {
        Exponents e(ring->nvars(), 0);
        e[i] = 1;
        return MPoly(ring, TermMap<C>{{e, ring->coeff_zero().one()}});
    }

    const MPolyRingPtr<C>& ring() const { return ring_; }
    const TermMap<C>& terms() const { return terms_; }

    MPoly zero() const { return MPoly(ring_); }
    MPoly one() const { return embed_base(ring_->coeff_zero().one()); }
    MPoly from_integer(long n) const { return embed_base(ring_->coeff_zero().from_integer(n)); }
    MPoly from_rational(const Rational& q) const { return embed_base(ring_->coeff_zero().from_rational(q)); }
    MPoly var(std::size_t i) const { return variable(ring_, i); }

    C base_zero() const { return ring_->coeff_zero(); }
    MPoly embed_base(const C& c) const {
        return MPoly(ring_, TermMap<C>{{Exponents(ring_->nvars(), 0), c}});
    }

    bool is_zero() const { return terms_.empty(); }
    bool derivation_is_zero() const {
        if (!ring_->coeff_zero().derivation_is_zero()) return false;
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            if (!ring_->image(i).empty()) return false;
        return true;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        TermMap<C> r = a.terms_;
        for (const auto& [e, c] : b.terms_) add_term(r, e, c);
        return MPoly(a.ring_, std::move(r));
    }
    friend MPoly operator-(const MPoly& a) {
        MPoly r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        TermMap<C> r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) add_term(r, sum(ea, eb), ca * cb);
        return MPoly(a.ring_, std::move(r));
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Inverse of a single term c*x^e; general elements are not invertible here.
    MPoly inv() const {
        if (terms_.size() != 1) throw DivisionByZero("only monomials are invertible in a Laurent polynomial ring");
        const auto& [e, c] = *terms_.begin();
        Exponents ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
        return MPoly(ring_, TermMap<C>{{ne, c.inv()}});
    }

    /// D(c x^e) = D(c) x^e + c * sum_i e_i x^(e - 1_i) D(x_i).
    MPoly derive() const
        requires DifferentialElement<C>
    {
        TermMap<C> r;
        for (const auto& [e, c] : terms_) {
            add_term(r, e, c.derive());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                Exponents lowered = e;
                --lowered[i];
                const C f = c * c.from_integer(e[i]);
                for (const auto& [ei, ci] : ring_->image(i)) add_term(r, sum(lowered, ei), f * ci);
            }
        }
        return MPoly(ring_, std::move(r));
    }

    bool is_compound() const {
        if (terms_.size() > 1) return true;
        return terms_.size() == 1 && terms_.begin()->second.is_compound();
    }

    std::string str() const {
        std::vector<std::string> out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            out.push_back(detail::format_term(it->second.str(), it->second.is_compound(), monomial_str(it->first)));
        return detail::join_terms(out);
    }

    std::optional<MPoly> symbol(std::string_view name) const {
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            if (name == ring_->names()[i]) return var(i);
        if (auto c = base_zero().symbol(name)) return embed_base(*c);
        return std::nullopt;
    }

private:
    static Exponents sum(const Exponents& a, const Exponents& b) {
        Exponents r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }

    static void add_term(TermMap<C>& r, const Exponents& e, const C& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = r.try_emplace(e, c);
        if (fresh) return;
        it->second = it->second + c;
        if (it->second.is_zero()) r.erase(it);
    }

    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero())
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    std::string monomial_str(const Exponents& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += detail::power_string(ring_->names()[i], e[i]);
        }
        return s;
    }

    MPolyRingPtr<C> ring_;
    TermMap<C> terms_;
};

template <class T>
inline constexpr bool has_general_inverse = true;

template <FieldElement C>
inline constexpr bool has_general_inverse<MPoly<C>> = false;

/// Ring with D(x_i) = rates[i] * x_i.
template <FieldElement C>
MPolyRingPtr<C> make_monomial_diff_ring(const std::vector<C>& rates, const std::string& prefix = "x") {
    if (rates.empty()) throw PreconditionError("at least one variable is required");
    const std::size_t n = rates.size();
    std::vector<std::string> names;
    std::vector<TermMap<C>> images;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(prefix + std::to_string(i));
        Exponents e(n, 0);
        e[i] = 1;
        TermMap<C> img;
        if (!rates[i].is_zero()) img.emplace(e, rates[i]);
        images.push_back(std::move(img));
    }
    return std::make_shared<const MPolyRing<C>>(rates.front().zero(), std::move(names), std::move(images));
}

/// Ring in the m^2 entries x_{rs} (named x<r*m+s>) of a generic matrix X with D(X) = P X.
template <FieldElement C>
MPolyRingPtr<C> make_linear_diff_ring(const Matrix<C>& p, const std::string& prefix = "x") {
    if (!p.is_square()) throw MismatchError("square matrix required");
    const std::size_t m = p.rows();
    const std::size_t n = m * m;
    std::vector<std::string> names;
    std::vector<TermMap<C>> images;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
            names.push_back(prefix + std::to_string(r * m + s));
            TermMap<C> img;
            for (std::size_t l = 0; l < m; ++l) {
                if (p(r, l).is_zero()) continue;
                Exponents e(n, 0);
                e[l * m + s] = 1;
                img.emplace(e, p(r, l));
            }
            images.push_back(std::move(img));
        }
    return std::make_shared<const MPolyRing<C>>(p.zero_element(), std::move(names), std::move(images));
}

}  // namespace diffsym
