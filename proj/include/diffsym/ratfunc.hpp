#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "cyclo.hpp"
#include "poly.hpp"
#include "printing.hpp"

namespace diffsym {

using CycloPoly = Poly<Cyclo>;

/// Which derivation the rational function field carries.
enum class BaseDerivation {
    ddt,   // d/dt, constants Q(w)
    zero,  // every element is a constant
};

/// The differential field k = Q(w)(t).
class RatFuncField {
public:
    RatFuncField(CycloFieldPtr cyclo, BaseDerivation derivation) : cyclo_(std::move(cyclo)), derivation_(derivation) {}

    const CycloFieldPtr& cyclo() const { return cyclo_; }
    int m() const { return cyclo_->m(); }
    BaseDerivation derivation() const { return derivation_; }
    bool derivation_is_zero() const { return derivation_ == BaseDerivation::zero; }

private:
    CycloFieldPtr cyclo_;
    BaseDerivation derivation_;
};

using RatFuncFieldPtr = std::shared_ptr<const RatFuncField>;

inline RatFuncFieldPtr make_ratfunc_field(int m, BaseDerivation derivation = BaseDerivation::ddt) {
    return std::make_shared<const RatFuncField>(make_cyclo_field(m), derivation);
}

/// Element num/den of Q(w)(t) in canonical form: coprime, den monic, zero is 0/1.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(RatFuncFieldPtr field)
        : field_(std::move(field)), num_(Cyclo(field_->cyclo())), den_(CycloPoly::constant(Cyclo(field_->cyclo()).one())) {}

    RatFunc(RatFuncFieldPtr field, CycloPoly num, CycloPoly den) : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static RatFunc from_poly(RatFuncFieldPtr field, CycloPoly num) {
        const Cyclo one = Cyclo(field->cyclo()).one();
        return RatFunc(std::move(field), std::move(num), CycloPoly::constant(one), nullptr);
    }
    static RatFunc constant(const RatFuncFieldPtr& field, const Cyclo& c) {
        return from_poly(field, CycloPoly::constant(c));
    }
    static RatFunc t(const RatFuncFieldPtr& field) {
        return from_poly(field, CycloPoly::x(Cyclo(field->cyclo())));
    }

    const RatFuncFieldPtr& field() const { return field_; }
    const CycloPoly& num() const { return num_; }
    const CycloPoly& den() const { return den_; }
    Cyclo cyclo_zero() const { return Cyclo(field_->cyclo()); }

    RatFunc zero() const { return RatFunc(field_); }
    RatFunc one() const { return constant(field_, cyclo_zero().one()); }
    RatFunc from_integer(long n) const { return constant(field_, cyclo_zero().from_integer(n)); }
    RatFunc from_rational(const Rational& q) const { return constant(field_, cyclo_zero().from_rational(q)); }
    RatFunc variable() const { return t(field_); }

    Cyclo base_zero() const { return cyclo_zero(); }
    RatFunc embed_base(const Cyclo& c) const { return constant(field_, c); }

    bool is_zero() const { return num_.is_zero(); }
    bool derivation_is_zero() const { return field_->derivation_is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    /// True for elements of the constant field Q(w).
    bool is_constant_element() const { return num_.degree() <= 0 && den_.degree() == 0; }
    /// The value as an element of Q(w); requires is_constant_element().
    Cyclo constant_value() const {
        if (!is_constant_element()) throw PreconditionError("rational function is not constant");
        return num_.coeff(0);
    }

    /// deg(num) - deg(den); the degree function of the pole/degree arguments.
    int degree() const {
        if (is_zero()) throw PreconditionError("degree of the zero rational function");
        return num_.degree() - den_.degree();
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) {
            if (a.is_polynomial()) return RatFunc(a.field_, a.num_ + b.num_, a.den_, nullptr);
            return RatFunc(a.field_, a.num_ + b.num_, a.den_);
        }
        // Henrici: with g = gcd(den a, den b), any common factor of the sum lies in g.
        const CycloPoly g = gcd(a.den_, b.den_);
        if (g.degree() == 0) return RatFunc(a.field_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, nullptr);
        const CycloPoly ad = a.den_.exact_div(g), bd = b.den_.exact_div(g);
        CycloPoly n = a.num_ * bd + b.num_ * ad;
        CycloPoly d = a.den_ * bd;
        if (n.is_zero()) return a.zero();
        const CycloPoly h = gcd(n, g);
        if (h.degree() > 0) {
            n = n.exact_div(h);
            d = d.exact_div(h);
        }
        const Cyclo lead = d.lc().inv();
        return RatFunc(a.field_, n.scaled(lead), d.scaled(lead), nullptr);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(a.field_, -a.num_, a.den_, nullptr); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return a.zero();
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.field_, a.num_ * b.num_, a.den_, nullptr);
        // Cross cancellation keeps the result reduced.
        CycloPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        if (const CycloPoly g = gcd(an, bd); g.degree() > 0) {
            an = an.exact_div(g);
            bd = bd.exact_div(g);
        }
        if (const CycloPoly g = gcd(bn, ad); g.degree() > 0) {
            bn = bn.exact_div(g);
            ad = ad.exact_div(g);
        }
        CycloPoly n = an * bn;
        CycloPoly d = ad * bd;
        if (d.is_monic()) return RatFunc(a.field_, std::move(n), std::move(d), nullptr);
        const Cyclo lead = d.lc().inv();
        return RatFunc(a.field_, n.scaled(lead), d.scaled(lead), nullptr);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc inv() const {
        if (is_zero()) throw DivisionByZero("rational function");
        const Cyclo lead = num_.lc().inv();
        return RatFunc(field_, den_.scaled(lead), num_.scaled(lead), nullptr);
    }

    RatFunc scaled(const Cyclo& c) const {
        if (c.is_zero()) return zero();
        return RatFunc(field_, num_.scaled(c), den_, nullptr);
    }

    /// The field's derivation: d/dt by the quotient rule, or zero.
    RatFunc derive() const {
        if (field_->derivation_is_zero() || is_zero()) return zero();
        const CycloPoly dn = num_.formal_derivative();
        if (is_polynomial()) return from_poly(field_, dn);
        return RatFunc(field_, dn * den_ - num_ * den_.formal_derivative(), den_ * den_);
    }

    /// Value at a point of Q(w); the denominator must not vanish there.
    Cyclo eval(const Cyclo& x) const { return num_.eval(x) * den_.eval(x).inv(); }

    bool is_compound() const {
        if (!is_polynomial()) return true;
        int terms = 0;
        for (const auto& c : num_.coeffs()) {
            if (c.is_zero()) continue;
            ++terms;
            if (c.term_count() > 1) return true;
        }
        return terms > 1;
    }

    std::string str() const {
        if (is_polynomial()) return poly_str(num_);
        return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
    }

    static std::string poly_str(const CycloPoly& p) {
        std::vector<std::string> terms;
        for (int k = p.degree(); k >= 0; --k) {
            const Cyclo& c = p.coeffs()[static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            terms.push_back(detail::format_term(c.str(), c.term_count() > 1, detail::power_string("t", k)));
        }
        return detail::join_terms(terms);
    }

    std::optional<RatFunc> symbol(std::string_view name) const {
        if (name == "t") return variable();
        if (auto c = cyclo_zero().symbol(name)) return embed_base(*c);
        return std::nullopt;
    }

private:
    // Trusted constructor for parts already in canonical form.
    RatFunc(RatFuncFieldPtr field, CycloPoly num, CycloPoly den, std::nullptr_t)
        : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
        if (num_.is_zero()) den_ = CycloPoly::constant(cyclo_zero().one());
    }

    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = CycloPoly::constant(cyclo_zero().one());
            return;
        }
        if (den_.degree() > 0) {
            const CycloPoly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_.exact_div(g);
                den_ = den_.exact_div(g);
            }
        }
        const Cyclo lead = den_.lc().inv();
        num_ = num_.scaled(lead);
        den_ = den_.scaled(lead);
    }

    RatFuncFieldPtr field_;
    CycloPoly num_;
    CycloPoly den_;
};

}  // namespace diffsym
