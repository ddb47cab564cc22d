#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kummer.hpp"
#include "ratfunc.hpp"

namespace diffsym {

using KummerRat = Kummer<RatFunc>;
using KummerRatFieldPtr = KummerFieldPtr<RatFunc>;
using Kummer2 = Kummer<KummerRat>;
using Kummer2FieldPtr = KummerFieldPtr<KummerRat>;

/// f = c * h^n with c a constant.
struct PowerDecomposition {
    Cyclo c;
    RatFunc h;
};

/// Writes f as c*h^n when every squarefree multiplicity of num(f) and den(f)
/// is divisible by n. h has monic numerator and denominator.
inline std::optional<PowerDecomposition> mth_power_up_to_constant(const RatFunc& f, int n) {
    if (f.is_zero()) throw PreconditionError("power detection of zero");
    if (n < 1) throw PreconditionError("exponent must be positive");
    const auto& field = f.field();
    const Cyclo one = f.cyclo_zero().one();
    CycloPoly hn = CycloPoly::constant(one), hd = CycloPoly::constant(one);
    for (const auto& [q, j] : squarefree_decompose(f.num())) {
        if (j % n != 0) return std::nullopt;
        hn = hn * q.pow(j / n);
    }
    for (const auto& [q, j] : squarefree_decompose(f.den())) {
        if (j % n != 0) return std::nullopt;
        hd = hd * q.pow(j / n);
    }
    return PowerDecomposition{f.num().lc(), RatFunc(field, hn, hd)};
}

namespace detail {

inline std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::optional<Integer> exact_root(const Integer& z, long n) {
    if (z < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = exact_root(-z, n);
        if (!r) return std::nullopt;
        return Integer(-*r);
    }
    Integer r;
    if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return std::nullopt;
    return r;
}

inline bool is_rational_power(const Rational& q, long n) {
    return exact_root(q.get_num(), n) && exact_root(q.get_den(), n);
}

// Squarefree integers d whose square root lies in Q(w_m): -1 and primes dividing
// the conductor, filtered by the discriminant condition D | N with N the
// conductor of Q(w_m).
inline std::vector<long> quadratic_subfield_radicands(long m) {
    const long cond = (m % 2 == 0) ? m : 2 * m;
    std::vector<long> gens{-1};
    for (long p : prime_divisors(cond)) gens.push_back(p);
    std::vector<long> out;
    for (unsigned mask = 1; mask < (1u << gens.size()); ++mask) {
        long d = 1;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (mask & (1u << i)) d *= gens[i];
        const long mod4 = ((d % 4) + 4) % 4;
        const long disc = std::labs(mod4 == 1 ? d : 4 * d);
        if (cond % disc == 0) out.push_back(d);
    }
    return out;
}

// Searches e in Z[w] with e^n = target over a coefficient box; target integral.
inline std::optional<Cyclo> search_integral_root(const Cyclo& target, long n) {
    const auto& field = target.field();
    const int deg = field->degree();
    double size = 0;
    for (const auto& q : target.coeffs()) size = std::max(size, std::fabs(q.get_d()));
    // Heuristic height bound from the coefficient size; capped so the box stays small.
    long h = std::max(2L, static_cast<long>(std::ceil(std::pow(size + 1, 1.0 / static_cast<double>(n)))) + 1);
    const double budget = 2e5;
    while (h > 1 && std::pow(2.0 * static_cast<double>(h) + 1, deg) > budget) --h;
    std::vector<long> v(static_cast<std::size_t>(deg), -h);
    for (;;) {
        std::vector<Rational> c(v.begin(), v.end());
        const Cyclo e(field, c);
        if (!e.is_zero() && power(e, n) == target) return e;
        std::size_t i = 0;
        while (i < v.size() && v[i] == h) v[i++] = -h;
        if (i == v.size()) return std::nullopt;
        ++v[i];
    }
}

}  // namespace detail

/// Decides whether a constant is an n-th power in Q(w).
///
/// Rational c: exact for odd prime n (a rational with an n-th root in an abelian
/// field already has one in Q) and for n = 2 via the quadratic subfields of
/// Q(w). Other cases fall back to a bounded-height search, so a false answer
/// there is only as strong as the search box.
inline bool constant_is_power(const Cyclo& c, long n) {
    if (n == 1 || c.is_zero()) return true;
    const long m = c.field()->m();
    if (c.is_rational()) {
        const Rational q = c.rational_value();
        if (detail::is_rational_power(q, n)) return true;
        if (n == 2) {
            for (long d : detail::quadratic_subfield_radicands(m))
                if (detail::is_rational_power(q / Rational(d), 2)) return true;
            return false;
        }
        const auto ps = detail::prime_divisors(n);
        if (ps.size() == 1 && ps[0] == n && n % 2 == 1) return false;
    } else {
        // Necessary: N(e^n) = N(e)^n with N(e) rational.
        Cyclo nm = c.one();
        for (long j = 1; j <= m; ++j) {
            if (std::gcd(j, m) != 1) continue;
            std::vector<Rational> conj(static_cast<std::size_t>(m), Rational(0));
            for (std::size_t i = 0; i < c.coeffs().size(); ++i)
                conj[(i * static_cast<std::size_t>(j)) % static_cast<std::size_t>(m)] += c.coeffs()[i];
            nm = nm * Cyclo(c.field(), conj);
        }
        const Rational norm = nm.rational_value();
        if (!detail::is_rational_power(norm, n)) return false;
    }
    // Clear denominators: c*D^n is integral and its n-th roots are D*e with e in Z[w].
    Integer den = 1;
    for (const auto& q : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    const Cyclo target = c * power(c.from_rational(Rational(den)), n);
    return detail::search_integral_root(target, n).has_value();
}

/// True when z^n - a is irreducible over Q(w)(t) (Kummer-Vahlen). When it is
/// not, `why` names the failing criterion.
inline bool kummer_irreducible(const RatFunc& a, int n, std::string* why = nullptr) {
    if (a.is_zero()) throw PreconditionError("radicand must be nonzero");
    for (long p : detail::prime_divisors(n)) {
        const auto d = mth_power_up_to_constant(a, static_cast<int>(p));
        if (d && constant_is_power(d->c, p)) {
            if (why) *why = "radicand " + a.str() + " is a " + std::to_string(p) + "-th power in k";
            return false;
        }
    }
    if (n % 4 == 0) {
        const RatFunc b = a * a.from_rational(Rational(-1, 4));
        const auto d = mth_power_up_to_constant(b, 4);
        if (d && constant_is_power(d->c, 4)) {
            if (why) *why = "radicand " + a.str() + " lies in -4*k^4";
            return false;
        }
    }
    return true;
}

/// The extension k(g), g^n = a, with the derivation extended by D(g) = D(a)/(n a) g.
/// Throws ReducibleRadicand when z^n - a is reducible.
inline KummerRatFieldPtr kummer_extend(const RatFunc& a, int n, std::string name = "xi") {
    std::string why;
    if (!kummer_irreducible(a, n, &why)) throw ReducibleRadicand(why);
    std::optional<RatFunc> root;
    if (a.field()->m() % n == 0) root = a.embed_base(Cyclo::omega_power(a.field()->cyclo(), a.field()->m() / n));
    return std::make_shared<const KummerField<RatFunc>>(a, n, std::move(name), std::move(root));
}

/// Two-step radical tower k(xi)(eta) with xi^n1 = a and eta^n2 = b.
struct RadicalTower {
    KummerRatFieldPtr first;
    Kummer2FieldPtr second;
    /// [E:k] when certified, otherwise empty (the bound n1*n2 still holds).
    std::optional<int> degree;
    int degree_bound = 0;
};

/// Builds k(xi, eta) and certifies [E:k] = n1*n2 when n1 | n2.
///
/// Over k' = k(w_n2) the degree is the order of <a^(n2/n1), b> in
/// k'^x / k'^x^n2; since the constants of k' are algebraic over those of k,
/// an element of k is an n2-th power in k' only if its squarefree
/// multiplicities are divisible by n2. A trivial kernel therefore forces
/// [k'(xi,eta):k'] = n1*n2 and hence [E:k] = n1*n2.
inline RadicalTower radical_tower(const RatFunc& a, int n1, const RatFunc& b, int n2,
                                  std::string name1 = "xi", std::string name2 = "eta") {
    RadicalTower out;
    out.first = kummer_extend(a, n1, std::move(name1));
    out.degree_bound = n1 * n2;
    bool certified = (n2 % n1 == 0);
    for (int i = 0; certified && i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            if (i == 0 && j == 0) continue;
            const RatFunc x = power(a, static_cast<long>(i) * (n2 / n1)) * power(b, j);
            if (mth_power_up_to_constant(x, n2)) {
                certified = false;
                break;
            }
        }
    if (certified) out.degree = n1 * n2;
    const KummerRat like(out.first);
    std::optional<KummerRat> root;
    const int m = a.field()->m();
    if (m % n2 == 0) root = embed(like, Cyclo::omega_power(a.field()->cyclo(), m / n2));
    out.second = std::make_shared<const KummerField<KummerRat>>(like.embed_base(b), n2, std::move(name2), std::move(root));
    return out;
}

}  // namespace diffsym
