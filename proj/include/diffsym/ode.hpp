#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "matrix.hpp"
#include "ratfunc.hpp"

namespace diffsym {

/// Affine space of rational solutions: particular + span(homogeneous).
struct OdeSolution {
    std::optional<RatFunc> particular;
    std::vector<RatFunc> homogeneous;

    bool solvable() const { return particular.has_value(); }
};

/// All x in Q(w)(t) with x' + mu x = g, where ' = d/dt and mu is a constant.
///
/// A pole of x of order e gives x' a pole of order e+1 that nothing else can
/// cancel, so den(x) divides D = prod q_j^(j-1) over the squarefree blocks of
/// den(g). Writing x = N/D and clearing denominators leaves a linear system in
/// the coefficients of N.
inline OdeSolution rational_ode_solve(const Cyclo& mu, const RatFunc& g) {
    if (g.field()->derivation_is_zero()) throw PreconditionError("rational_ode_solve needs the derivation d/dt");
    const auto& field = g.field();
    const Cyclo zc = g.cyclo_zero();
    CycloPoly d = CycloPoly::constant(zc.one());
    for (const auto& [q, j] : squarefree_decompose(g.den())) d = d * q.pow(j - 1);
    const int excess = g.is_zero() ? 0 : std::max(g.num().degree() - g.den().degree(), 0);
    const int bound = d.degree() + excess + 1;

    // (N' D - N D') den(g) + mu N D den(g) = num(g) D^2
    const CycloPoly dd = d.formal_derivative();
    const CycloPoly& gd = g.den();
    const CycloPoly rhs = g.num() * d * d;
    std::vector<CycloPoly> cols;
    int rows = rhs.degree() + 1;
    for (int k = 0; k <= bound; ++k) {
        const CycloPoly tk = CycloPoly::monomial(zc.one(), k);
        const CycloPoly col = (tk.formal_derivative() * d - tk * dd) * gd + (tk * d * gd).scaled(mu);
        rows = std::max(rows, col.degree() + 1);
        cols.push_back(col);
    }
    rows = std::max(rows, 1);
    Matrix<Cyclo> a(static_cast<std::size_t>(rows), cols.size(), zc);
    std::vector<Cyclo> b(static_cast<std::size_t>(rows), zc);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r <= cols[c].degree(); ++r) a(static_cast<std::size_t>(r), c) = cols[c].coeff(r);
    for (int r = 0; r <= rhs.degree(); ++r) b[static_cast<std::size_t>(r)] = rhs.coeff(r);

    const auto sol = solve(a, b);
    const auto to_ratfunc = [&](const std::vector<Cyclo>& v) { return RatFunc(field, CycloPoly(zc, v), d); };
    OdeSolution out;
    if (sol.particular) out.particular = to_ratfunc(*sol.particular);
    for (const auto& k : sol.kernel) out.homogeneous.push_back(to_ratfunc(k));
    return out;
}

}  // namespace diffsym
