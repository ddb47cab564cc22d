#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "deriv.hpp"

namespace diffsym {

inline constexpr std::uint64_t default_seed_value = 20240611;

/// DIFFSYM_SEED when set, otherwise the built-in default.
inline std::uint64_t default_seed() {
    if (const char* s = std::getenv("DIFFSYM_SEED"); s && *s) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw PreconditionError(std::string("DIFFSYM_SEED is not an unsigned integer: ") + s);
        }
    }
    return default_seed_value;
}

using Rng = std::mt19937_64;

inline long random_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Cyclo random_cyclo(Rng& rng, const Cyclo& like, long height = 3) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < like.coeffs().size(); ++i) {
        Rational q(random_int(rng, -height, height), random_int(rng, 1, height));
        q.canonicalize();
        c.push_back(q);
    }
    return Cyclo(like.field(), std::move(c));
}

inline CycloPoly random_cyclo_poly(Rng& rng, const Cyclo& like, int max_degree, long height = 3) {
    std::vector<Cyclo> c;
    const int d = static_cast<int>(random_int(rng, 0, max_degree));
    for (int i = 0; i <= d; ++i) c.push_back(random_int(rng, 0, 2) == 0 ? like.zero() : random_cyclo(rng, like, height));
    return CycloPoly(like.zero(), std::move(c));
}

/// num/den with small degrees and heights; den is nonzero.
inline RatFunc random_ratfunc(Rng& rng, const RatFunc& like, int max_degree = 2, long height = 3) {
    const Cyclo z = like.cyclo_zero();
    const CycloPoly num = random_cyclo_poly(rng, z, max_degree, height);
    CycloPoly den = random_cyclo_poly(rng, z, max_degree, height);
    if (den.is_zero()) den = CycloPoly::constant(z.one());
    return RatFunc(like.field(), num, den);
}

/// A polynomial in t.
inline RatFunc random_polynomial(Rng& rng, const RatFunc& like, int max_degree = 1, long height = 3) {
    return RatFunc::from_poly(like.field(), random_cyclo_poly(rng, like.cyclo_zero(), max_degree, height));
}

template <class T, class Gen>
SymbolElem<T> random_symbol(const SymbolAlgebraPtr<T>& alg, Gen&& gen, bool trace_zero = false) {
    SymbolElem<T> x(alg);
    for (int i = 0; i < alg->m(); ++i)
        for (int j = 0; j < alg->m(); ++j)
            if (!(trace_zero && i == 0 && j == 0)) x = x.with(i, j, gen());
    return x;
}

inline SymbolElem<RatFunc> random_symbol(Rng& rng, const SymbolAlgebraPtr<RatFunc>& alg, bool trace_zero = false, int max_degree = 1) {
    const RatFunc like = alg->scalar_zero();
    return random_symbol(alg, [&] { return random_ratfunc(rng, like, max_degree); }, trace_zero);
}

/// At most `terms` nonzero coefficients, each a random rational function.
inline SymbolElem<RatFunc> random_sparse_symbol(Rng& rng, const SymbolAlgebraPtr<RatFunc>& alg, int terms = 2, int max_degree = 1) {
    SymbolElem<RatFunc> x(alg);
    const int m = alg->m();
    for (int k = 0; k < terms; ++k) {
        const int i = static_cast<int>(random_int(rng, 0, m - 1)), j = static_cast<int>(random_int(rng, 0, m - 1));
        x = x.with(i, j, random_ratfunc(rng, alg->scalar_zero(), max_degree));
    }
    return x;
}

/// d_s + inner(theta) for a random trace-zero theta: valid by construction.
/// theta has polynomial coefficients unless `rational_theta` is set.
inline Derivation<RatFunc> random_valid_derivation(Rng& rng, const SymbolAlgebraPtr<RatFunc>& alg, int max_degree = 1,
                                                   bool rational_theta = false) {
    const RatFunc like = alg->scalar_zero();
    const auto theta = rational_theta ? random_symbol(rng, alg, true, max_degree)
                                      : random_symbol(alg, [&] { return random_polynomial(rng, like, max_degree); }, true);
    return add_inner(standard_derivation(alg), theta);
}

}  // namespace diffsym
