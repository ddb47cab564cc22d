#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deriv.hpp"
#include "matdiff.hpp"
#include "mpoly.hpp"
#include "scalars.hpp"
#include "symalg.hpp"

namespace diffsym {

template <RingElement E, RingElement T>
Matrix<E> embed_matrix(const E& like, const Matrix<T>& x) {
    return x.map([&](const T& e) { return embed(like, e); });
}

template <RingElement T>
std::vector<std::vector<std::string>> matrix_strings(const Matrix<T>& x) {
    std::vector<std::vector<std::string>> out(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c) out[r].push_back(x(r, c).str());
    return out;
}

/// The isomorphism A (x) k(xi) -> M_m(k(xi)) with u -> diag(xi, w^(m-1) xi, ..., w xi)
/// and v -> beta in the top-right corner, ones below the diagonal.
struct PhiMap {
    SymbolAlgebraPtr<RatFunc> alg;
    KummerRatFieldPtr xi_field;
    /// A with scalars extended to k(xi).
    SymbolAlgebraPtr<KummerRat> ext;
    Matrix<KummerRat> A, B;
    /// A^i B^j at index i*m + j.
    std::vector<Matrix<KummerRat>> images;

    int m() const { return alg->m(); }
    KummerRat xi() const { return KummerRat::generator(xi_field); }
    KummerRat scalar_zero() const { return KummerRat(xi_field); }
};

inline PhiMap phi_build(const SymbolAlgebraPtr<RatFunc>& alg, const KummerRatFieldPtr& xi_field) {
    const int m = alg->m();
    if (xi_field->degree() != m || !(xi_field->radicand() == alg->alpha()))
        throw PreconditionError("phi_build: xi^m must equal alpha");
    PhiMap phi;
    phi.alg = alg;
    phi.xi_field = xi_field;
    const KummerRat zero(xi_field);
    phi.ext = extend_scalars(alg, zero);
    const auto n = static_cast<std::size_t>(m);
    const KummerRat xi = phi.xi();
    phi.A = Matrix<KummerRat>(n, n, zero);
    phi.B = Matrix<KummerRat>(n, n, zero);
    for (int r = 0; r < m; ++r) phi.A(static_cast<std::size_t>(r), static_cast<std::size_t>(r)) = phi.ext->omega_power(m - r) * xi;
    phi.B(0, n - 1) = embed(zero, alg->beta());
    for (std::size_t r = 1; r < n; ++r) phi.B(r, r - 1) = zero.one();

    const auto id = Matrix<KummerRat>::identity(n, zero);
    if (!(phi.A.pow(m) == id.scaled(embed(zero, alg->alpha())))) throw Error("phi_build: A^m != alpha I");
    if (!(phi.B.pow(m) == id.scaled(embed(zero, alg->beta())))) throw Error("phi_build: B^m != beta I");
    if (!(phi.B * phi.A == (phi.A * phi.B).scaled(phi.ext->omega()))) throw Error("phi_build: BA != w AB");

    std::vector<Matrix<KummerRat>> apow{id}, bpow{id};
    for (int k = 1; k < m; ++k) {
        apow.push_back(apow.back() * phi.A);
        bpow.push_back(bpow.back() * phi.B);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) phi.images.push_back(apow[static_cast<std::size_t>(i)] * bpow[static_cast<std::size_t>(j)]);
    return phi;
}

/// Phi over k(xi) = Q(w)(t)(xi) with xi^m = alpha.
inline PhiMap phi_build(const SymbolAlgebraPtr<RatFunc>& alg) {
    return phi_build(alg, kummer_extend(alg->alpha(), alg->m(), "xi"));
}

/// sum c_ij A^i B^j.
inline Matrix<KummerRat> phi_apply(const PhiMap& phi, const SymbolElem<KummerRat>& x) {
    if (!x.algebra()->same_as(*phi.ext)) throw MismatchError("phi_apply: element is not in A (x) k(xi)");
    const auto n = static_cast<std::size_t>(phi.m());
    Matrix<KummerRat> out(n, n, phi.scalar_zero());
    for (std::size_t p = 0; p < phi.images.size(); ++p) {
        const KummerRat& c = x.coeffs()[p];
        if (!c.is_zero()) out = out + phi.images[p].scaled(c);
    }
    return out;
}

inline Matrix<KummerRat> phi_apply(const PhiMap& phi, const SymbolElem<RatFunc>& x) {
    return phi_apply(phi, lift(x, phi.ext));
}

/// w = sum_{1<=i<=m-1} delta(beta)/(m alpha beta (w^i - 1)) u^i xi^(m-i).
inline SymbolElem<KummerRat> compute_w(const PhiMap& phi) {
    const int m = phi.m();
    const RatFunc& al = phi.alg->alpha();
    const RatFunc& be = phi.alg->beta();
    const RatFunc one = al.one();
    const RatFunc base = be.derive() * (al * be * al.from_integer(m)).inv();
    SymbolElem<KummerRat> w(phi.ext);
    if (base.is_zero()) return w;
    const KummerRat xi = phi.xi();
    for (int i = 1; i < m; ++i) {
        const RatFunc c = base * (phi.alg->omega_power(i) - one).inv();
        w = w.with(i, 0, embed(xi, c) * power(xi, m - i));
    }
    return w;
}

/// One entry where the constructive P and the closed-form table differ.
struct ClosedFormEntry {
    std::size_t r = 0, s = 0;
    std::string constructive;
    /// Empty when the table gives no value for (r, s).
    std::string closed_form;
    bool uncovered = false;
};

struct ClosedFormCheck {
    std::vector<ClosedFormEntry> discrepancies;
    /// Entries for which the table's case ranges give no formula.
    std::vector<std::pair<std::size_t, std::size_t>> uncovered;

    bool agrees() const { return discrepancies.empty(); }
    /// Every discrepancy sits at an entry the table does not cover.
    bool confined_to_range() const {
        for (const auto& d : discrepancies)
            if (!d.uncovered) return false;
        return true;
    }
};

/// Entry-wise table for P with a_ij the coefficients of d(u):
///   1 < r, s < r:  sum_i a_{i,r-s} xi^i w^((m-r)i)
///   1 < s, r < s:  beta sum_i a_{i,m+r-s} xi^i w^((m-r)i)
///   r = s:         sum_{i>=1} a_{i0} xi^i w^((m-r)i) - sum_{i>=1} w^((m-r)i) delta(beta)/((w^i - 1) m beta)
/// Entries outside these ranges are left empty.
inline std::vector<std::vector<std::optional<KummerRat>>> closed_form_table(const PhiMap& phi, const DerivationData<RatFunc>& d) {
    const int m = phi.m();
    const KummerRat xi = phi.xi();
    const RatFunc& be = phi.alg->beta();
    const RatFunc one = be.one();
    const RatFunc rb = be.derive() * (be * be.from_integer(m)).inv();
    std::vector<std::vector<std::optional<KummerRat>>> out(static_cast<std::size_t>(m),
                                                          std::vector<std::optional<KummerRat>>(static_cast<std::size_t>(m)));
    auto column_sum = [&](int col, int r, int from) {
        KummerRat acc = phi.scalar_zero();
        for (int i = from; i < m; ++i)
            acc = acc + embed(xi, d.a_at(i, col) * phi.alg->omega_power(static_cast<long>(m - r) * i)) * power(xi, i);
        return acc;
    };
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
            std::optional<KummerRat> v;
            if (r == s) {
                RatFunc tail = one.zero();
                for (int i = 1; i < m; ++i)
                    tail = tail + phi.alg->omega_power(static_cast<long>(m - r) * i) * rb * (phi.alg->omega_power(i) - one).inv();
                v = column_sum(0, r, 1) - embed(xi, tail);
            } else if (r > 1 && s < r) {
                v = column_sum(r - s, r, 0);
            } else if (s > 1 && r < s) {
                v = embed(xi, be) * column_sum(m + r - s, r, 0);
            }
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = std::move(v);
        }
    return out;
}

/// The gauge matrix P with Phi o d* = d_P o Phi.
struct GaugeMatrix {
    /// theta (x) 1 - w.
    SymbolElem<KummerRat> rho;
    Matrix<KummerRat> P;
    ClosedFormCheck check;
    std::vector<std::string> diagnostics;
};

/// P = Phi(theta (x) 1 - w) with theta from decompose(d), cross-checked against the closed-form table.
inline GaugeMatrix compute_P(const Derivation<RatFunc>& d, const PhiMap& phi) {
    if (!d.algebra()->same_as(*phi.alg)) throw MismatchError("compute_P: derivation and Phi belong to different algebras");
    const SymbolElem<RatFunc> theta = decompose(d);
    GaugeMatrix g;
    g.rho = lift(theta, phi.ext) - compute_w(phi);
    g.P = phi_apply(phi, g.rho);

    const auto table = closed_form_table(phi, d.data());
    for (std::size_t r = 0; r < g.P.rows(); ++r)
        for (std::size_t s = 0; s < g.P.cols(); ++s) {
            const auto& cf = table[r][s];
            if (!cf) {
                g.check.uncovered.emplace_back(r, s);
                if (!g.P(r, s).is_zero()) g.check.discrepancies.push_back({r, s, g.P(r, s).str(), "", true});
            } else if (!(*cf == g.P(r, s))) {
                g.check.discrepancies.push_back({r, s, g.P(r, s).str(), cf->str(), false});
            }
        }
    if (!g.check.agrees())
        g.diagnostics.push_back(std::string("closed-form table disagrees with Phi(theta - w) at ") +
                                std::to_string(g.check.discrepancies.size()) + " entries" +
                                (g.check.confined_to_range() ? " (all outside the table's ranges)" : ""));
    return g;
}

/// t_r for 0 <= r < m, as a root-of-unity sum and as (m-1)/2 - r.
struct TIdentity {
    int m = 0;
    std::vector<Rational> from_sum, closed;
    bool holds = false;
};

/// `inject_sign_error` negates the closed form (fault injection for the replay suite).
inline TIdentity t_identity(int m, bool inject_sign_error = false) {
    if (m < 2) throw PreconditionError("t_r needs m >= 2");
    const auto field = make_cyclo_field(m);
    const Cyclo one = Cyclo::rational(field, 1);
    TIdentity out;
    out.m = m;
    for (int r = 0; r < m; ++r) {
        Cyclo acc = one.zero();
        for (int i = 1; i < m; ++i)
            acc = acc + (Cyclo::omega_power(field, static_cast<long>(r) * i) * (one - Cyclo::omega_power(field, i))).inv();
        if (!acc.is_rational()) throw Error("t_r sum is not rational");
        out.from_sum.push_back(acc.rational_value());
        Rational c = Rational(m - 1, 2) - r;
        c.canonicalize();
        out.closed.push_back(inject_sign_error ? Rational(-c) : c);
    }
    out.holds = out.from_sum == out.closed;
    return out;
}

/// P_s = delta(beta)/(m beta) diag(t_0, ..., t_{m-1}) over k(xi).
struct StandardGauge {
    TIdentity t;
    Matrix<KummerRat> P;
};

inline StandardGauge compute_Ps(const PhiMap& phi, bool inject_sign_error = false) {
    const int m = phi.m();
    StandardGauge out;
    out.t = t_identity(m, inject_sign_error);
    if (!out.t.holds) throw Error("t_r identity failed: root-of-unity sum differs from (m-1)/2 - r");
    const RatFunc& be = phi.alg->beta();
    const RatFunc rb = be.derive() * (be * be.from_integer(m)).inv();
    const KummerRat zero = phi.scalar_zero();
    std::vector<KummerRat> diag;
    for (const auto& t : out.t.closed) diag.push_back(embed(zero, rb * be.from_rational(t)));
    out.P = Matrix<KummerRat>::diagonal(diag);
    return out;
}

namespace detail {

// Checks map(d(x)) = d_P(map(x)) on the basis u^i v^j and map-compatibility on xi.
template <class Map>
MatrixVerdict verify_iso_with(const Map& map, const Derivation<RatFunc>& d, const Matrix<KummerRat>& p, const KummerRat& xi) {
    const auto& alg = d.algebra();
    for (int i = 0; i < alg->m(); ++i)
        for (int j = 0; j < alg->m(); ++j) {
            const auto x = SymbolElem<RatFunc>::basis(alg, i, j);
            MatrixVerdict v = compare_matrices(map(d.apply(x)), apply_dP(p, map(x)));
            if (!v.ok) {
                v.reason = "Phi(d*(x)) != d_P(Phi(x)) for x = " + x.str();
                return v;
            }
        }
    const auto n = p.rows();
    const auto id = Matrix<KummerRat>::identity(n, xi);
    MatrixVerdict v = compare_matrices(id.scaled(xi.derive()), apply_dP(p, id.scaled(xi)));
    if (!v.ok) v.reason = "Phi(d*(xi)) != d_P(xi I)";
    return v;
}

inline std::string kummer_tower_line(const KummerRatFieldPtr& f) {
    return f->name() + "^" + std::to_string(f->degree()) + " = " + f->radicand().str();
}
inline std::string kummer_rule_line(const KummerRatFieldPtr& f) {
    return "D(" + f->name() + ") = " + detail::format_term(f->rate().str(), f->rate().is_compound(), f->name());
}
inline std::string base_tower_line(const RatFunc& x) {
    return "k = Q(w)(t), w a primitive " + std::to_string(x.field()->m()) + "-th root of unity";
}
inline std::string base_rule_line(const RatFunc& x) {
    return x.derivation_is_zero() ? "D = 0 on k" : "D = d/dt on k";
}

template <FieldElement C>
std::vector<std::string> variable_rules(const MPolyRingPtr<C>& ring) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        out.push_back("D(" + ring->names()[i] + ") = " + MPoly<C>::variable(ring, i).derive().str());
    return out;
}

}  // namespace detail

/// Phi(d*(x)) = d_P(Phi(x)) for every basis element and for xi.
inline MatrixVerdict verify_diff_isomorphism(const PhiMap& phi, const Derivation<RatFunc>& d, const Matrix<KummerRat>& p) {
    if (!d.algebra()->same_as(*phi.alg)) throw MismatchError("verify_diff_isomorphism: algebra mismatch");
    return detail::verify_iso_with([&](const SymbolElem<RatFunc>& x) { return phi_apply(phi, x); }, d, p, phi.xi());
}

struct ExtensionDescriptor {
    std::vector<std::string> tower;
    std::vector<std::string> derivation_rules;
};

/// Output of a splitting construction.
struct SplitReport {
    std::string construction;
    ExtensionDescriptor extension;
    std::vector<std::vector<std::string>> P, F;
    MatrixVerdict gauge;
    std::optional<MatrixVerdict> isomorphism;
    /// [E:k] when finite and certified.
    std::optional<int> degree;
    /// Upper bound on [E:k] for algebraic constructions.
    std::optional<int> degree_bound;
    std::optional<int> transcendence_degree;
    std::vector<std::string> diagnostics;

    bool ok() const { return gauge.ok && (!isomorphism || isomorphism->ok); }
};

/// A report together with the exact matrices over E.
template <RingElement E>
struct SplitResult {
    SplitReport report;
    Matrix<E> P, F;
};

/// (E, P_s, F) with E = k(xi, eta), eta^m = beta (m odd) or k(xi, zeta), zeta^(2m) = beta (m even).
inline SplitResult<Kummer2> split_standard(const SymbolAlgebraPtr<RatFunc>& alg) {
    const int m = alg->m();
    const bool odd = (m % 2 == 1);
    const int n2 = odd ? m : 2 * m;
    const RadicalTower tower = radical_tower(alg->alpha(), m, alg->beta(), n2, "xi", odd ? "eta" : "zeta");
    const PhiMap phi = phi_build(alg, tower.first);
    const StandardGauge ps = compute_Ps(phi);
    const Kummer2 g = Kummer2::generator(tower.second);

    std::vector<Kummer2> diag;
    for (const auto& t : ps.t.closed) {
        const Rational e = odd ? t : Rational(2 * t);
        if (e.get_den() != 1) throw Error("non-integral exponent in the standard splitting matrix");
        diag.push_back(power(g, checked_long(e.get_num())));
    }

    SplitResult<Kummer2> out;
    out.P = embed_matrix(g, ps.P);
    out.F = Matrix<Kummer2>::diagonal(diag);
    auto& rep = out.report;
    rep.construction = "standard";
    rep.extension.tower = {detail::base_tower_line(alg->alpha()), detail::kummer_tower_line(tower.first),
                           tower.second->name() + "^" + std::to_string(n2) + " = " + alg->beta().str()};
    rep.extension.derivation_rules = {detail::base_rule_line(alg->alpha()), detail::kummer_rule_line(tower.first),
                                      "D(" + tower.second->name() + ") = " +
                                          detail::format_term(tower.second->rate().str(), tower.second->rate().is_compound(),
                                                              tower.second->name())};
    rep.P = matrix_strings(out.P);
    rep.F = matrix_strings(out.F);
    rep.gauge = verify_gauge(out.P, out.F);
    rep.isomorphism = verify_diff_isomorphism(phi, standard_derivation(alg), ps.P);
    rep.degree = tower.degree;
    rep.degree_bound = tower.degree_bound;
    rep.transcendence_degree = 0;
    if (!tower.degree) rep.diagnostics.push_back("[E:k] not certified; only the bound holds");
    return out;
}

/// A = (alpha1, beta1) re-presented on a Kummer generator rho1 (rho1^m = alpha1)
/// and theta1 with theta1 rho1 = w rho1 theta1, theta1^m = beta1.
struct KummerPresentation {
    SymbolElem<RatFunc> rho1, theta1;
    RatFunc alpha1, beta1;
    SymbolAlgebraPtr<RatFunc> presented;
    /// Columns: coordinates of u^i v^j in the basis rho1^i theta1^j.
    Matrix<RatFunc> coords;
};

/// Finds theta1 in the kernel of x -> x rho1 - w rho1 x.
///
/// Every kernel element is theta1 f(rho1) and (theta1 f)^m = beta1 Nr(f) lies in k,
/// so the first kernel vector with a scalar m-th power is taken.
inline KummerPresentation kummer_presentation(const SymbolElem<RatFunc>& rho1) {
    const auto& alg = rho1.algebra();
    const int m = alg->m();
    const auto r1m = rho1.pow(m);
    if (!r1m.is_scalar() || r1m.is_zero()) throw PreconditionError("rho1^m is not a nonzero element of k");
    KummerPresentation kp;
    kp.rho1 = rho1;
    kp.alpha1 = r1m.coeff(0, 0);
    const RatFunc& w = alg->omega();
    const auto mat = linear_map_matrix(alg, [&](const SymbolElem<RatFunc>& x) { return x * rho1 - (rho1 * x).scaled(w); });
    bool found = false;
    for (auto& k : kernel(mat)) {
        SymbolElem<RatFunc> x(alg, std::move(k));
        const auto xm = x.pow(m);
        if (xm.is_scalar() && !xm.is_zero()) {
            kp.theta1 = x;
            kp.beta1 = xm.coeff(0, 0);
            found = true;
            break;
        }
    }
    if (!found) throw Error("no theta1 with theta1 rho1 = w rho1 theta1 and theta1^m in k was found");
    kp.presented = make_symbol_algebra<RatFunc>(m, kp.alpha1, kp.beta1, w);

    const std::size_t n = alg->dim();
    Matrix<RatFunc> basis(n, n, alg->scalar_zero());
    std::vector<SymbolElem<RatFunc>> rp{rho1.one()}, tp{rho1.one()};
    for (int k = 1; k < m; ++k) {
        rp.push_back(rp.back() * rho1);
        tp.push_back(tp.back() * kp.theta1);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const auto e = rp[static_cast<std::size_t>(i)] * tp[static_cast<std::size_t>(j)];
            for (std::size_t r = 0; r < n; ++r) basis(r, alg->index(i, j)) = e.coeffs()[r];
        }
    kp.coords = Matrix<RatFunc>(n, n, alg->scalar_zero());
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<RatFunc> rhs(n, alg->scalar_zero());
        rhs[c] = rhs[c].one();
        const auto sol = solve(basis, rhs);
        if (!sol.particular || !sol.kernel.empty()) throw Error("rho1^i theta1^j is not a basis of A");
        for (std::size_t r = 0; r < n; ++r) kp.coords(r, c) = (*sol.particular)[r];
    }
    return kp;
}

/// x in the presented algebra's coordinates.
inline SymbolElem<RatFunc> to_presented(const KummerPresentation& kp, const SymbolElem<RatFunc>& x) {
    const std::size_t n = x.coeffs().size();
    std::vector<RatFunc> c(n, x.algebra()->scalar_zero());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            if (!x.coeffs()[s].is_zero()) c[r] = c[r] + kp.coords(r, s) * x.coeffs()[s];
    return SymbolElem<RatFunc>(kp.presented, std::move(c));
}

/// Picks u or v when rho lies in k(u) or k(v), else rho itself when rho^m is in k.
inline SymbolElem<RatFunc> default_kummer_generator(const SymbolElem<RatFunc>& rho) {
    const auto& alg = rho.algebra();
    const int m = alg->m();
    bool in_u = true, in_v = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (rho.coeff(i, j).is_zero()) continue;
            if (j != 0) in_u = false;
            if (i != 0) in_v = false;
        }
    if (in_u) return SymbolElem<RatFunc>::u(alg);
    if (in_v) return SymbolElem<RatFunc>::v(alg);
    if (rho.pow(m).is_scalar()) return rho;
    throw PreconditionError("rho is not expressed over a Kummer generator; pass rho1 explicitly");
}

namespace detail {

struct InnerSetup {
    KummerPresentation kp;
    PhiMap phi;
    std::vector<RatFunc> a;
    Matrix<KummerRat> phi_rho;
};

inline InnerSetup inner_setup(const SymbolElem<RatFunc>& rho, const std::optional<SymbolElem<RatFunc>>& rho1_in) {
    const auto& alg = rho.algebra();
    const int m = alg->m();
    if (!alg->scalar_zero().derivation_is_zero()) throw PreconditionError("the base derivation must be zero");
    if (minimal_polynomial(rho).degree() != m) throw PreconditionError("k(rho) does not have degree m over k");
    const SymbolElem<RatFunc> rho1 = rho1_in ? *rho1_in : default_kummer_generator(rho);
    auto coords = coordinates_in_powers(rho, rho1);
    if (!coords || coords->size() != static_cast<std::size_t>(m)) throw PreconditionError("rho is not a polynomial in rho1 of degree < m");
    InnerSetup s;
    s.kp = kummer_presentation(rho1);
    try {
        s.phi = phi_build(s.kp.presented, kummer_extend(s.kp.alpha1, m, "xi"));
    } catch (const ReducibleRadicand& e) {
        throw PreconditionError(std::string("k(rho)/k is not cyclic of degree m: ") + e.what());
    }
    s.a = std::move(*coords);
    s.phi_rho = phi_apply(s.phi, to_presented(s.kp, rho));
    return s;
}

inline MatrixVerdict inner_isomorphism(const InnerSetup& s, const SymbolElem<RatFunc>& rho, const Matrix<KummerRat>& p) {
    const auto d = inner_derivation(rho);
    return verify_iso_with([&](const SymbolElem<RatFunc>& x) { return phi_apply(s.phi, to_presented(s.kp, x)); }, d, p,
                           s.phi.xi());
}

}  // namespace detail

using InnerField = MPoly<KummerRat>;

/// E = k(xi)(x_0, ..., x_{m-1}), D(x_i) = sum_j a_j (w^(m-i) xi)^j x_i, F = diag(x_i), P = sum a_i A^i.
inline SplitResult<InnerField> split_inner_cyclic(const SymbolElem<RatFunc>& rho,
                                                  const std::optional<SymbolElem<RatFunc>>& rho1 = std::nullopt) {
    const int m = rho.m();
    const detail::InnerSetup s = detail::inner_setup(rho, rho1);
    const KummerRat xi = s.phi.xi();
    const auto n = static_cast<std::size_t>(m);

    Matrix<KummerRat> p(n, n, s.phi.scalar_zero());
    Matrix<KummerRat> apow = Matrix<KummerRat>::identity(n, xi);
    for (int i = 0; i < m; ++i) {
        p = p + apow.scaled(embed(xi, s.a[static_cast<std::size_t>(i)]));
        apow = apow * s.phi.A;
    }
    std::vector<KummerRat> rates;
    for (int i = 0; i < m; ++i) {
        KummerRat c = s.phi.scalar_zero();
        const KummerRat root = s.phi.ext->omega_power(m - i) * xi;
        for (int j = 0; j < m; ++j) c = c + embed(xi, s.a[static_cast<std::size_t>(j)]) * power(root, j);
        rates.push_back(c);
    }
    const auto ring = make_monomial_diff_ring(rates);
    const InnerField like(ring);
    std::vector<InnerField> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(InnerField::variable(ring, i));

    SplitResult<InnerField> out;
    out.P = embed_matrix(like, p);
    out.F = Matrix<InnerField>::diagonal(diag);
    auto& rep = out.report;
    rep.construction = "inner";
    rep.extension.tower = {detail::base_tower_line(rho.algebra()->alpha()), detail::kummer_tower_line(s.phi.xi_field),
                           "x0..x" + std::to_string(m - 1) + " algebraically independent over k(xi)"};
    rep.extension.derivation_rules = {detail::base_rule_line(rho.algebra()->alpha()), detail::kummer_rule_line(s.phi.xi_field)};
    for (auto& r : detail::variable_rules(ring)) rep.extension.derivation_rules.push_back(std::move(r));
    rep.P = matrix_strings(out.P);
    rep.F = matrix_strings(out.F);
    rep.gauge = verify_gauge(out.P, out.F);
    rep.isomorphism = detail::inner_isomorphism(s, rho, p);
    rep.transcendence_degree = m;
    if (!(p == s.phi_rho)) rep.diagnostics.push_back("sum a_i A^i differs from Phi(rho)");
    return out;
}

/// Which block form to use for F in the m/2 construction.
enum class HalfBlockForm {
    /// diag(F0, F0^-1).
    inverse,
    /// diag(F0, -F0), which does not satisfy the gauge equation.
    negated,
};

/// E' = k(xi)(x_0, ..., x_{m/2-1}) with D(x_i) = -w^(m/2-i) xi x_i; P = diag(P0, -P0),
/// P0 = diag(xi, -w^(m/2-1) xi, ..., -w xi).
inline SplitResult<InnerField> split_inner_even_half(const SymbolElem<RatFunc>& rho, HalfBlockForm form = HalfBlockForm::inverse) {
    const int m = rho.m();
    if (m % 2 != 0) throw PreconditionError("the m/2 construction needs m even");
    if (!rho.pow(m).is_scalar()) throw PreconditionError("rho^m is not in k");
    const detail::InnerSetup s = detail::inner_setup(rho, rho);
    const KummerRat xi = s.phi.xi();
    const int h = m / 2;

    std::vector<KummerRat> p0;
    for (int i = 0; i < h; ++i) p0.push_back(i == 0 ? xi : -(s.phi.ext->omega_power(h - i) * xi));
    std::vector<KummerRat> pdiag = p0;
    for (const auto& x : p0) pdiag.push_back(-x);
    const Matrix<KummerRat> p = Matrix<KummerRat>::diagonal(pdiag);

    std::vector<KummerRat> rates;
    for (int i = 0; i < h; ++i) rates.push_back(-(s.phi.ext->omega_power(h - i) * xi));
    const auto ring = make_monomial_diff_ring(rates);
    const InnerField like(ring);
    std::vector<InnerField> fdiag;
    for (int i = 0; i < h; ++i) fdiag.push_back(InnerField::variable(ring, static_cast<std::size_t>(i)));
    for (int i = 0; i < h; ++i) {
        const auto x = InnerField::variable(ring, static_cast<std::size_t>(i));
        fdiag.push_back(form == HalfBlockForm::inverse ? x.inv() : -x);
    }

    SplitResult<InnerField> out;
    out.P = embed_matrix(like, p);
    out.F = Matrix<InnerField>::diagonal(fdiag);
    auto& rep = out.report;
    rep.construction = form == HalfBlockForm::inverse ? "inner-half" : "inner-half-negated";
    rep.extension.tower = {detail::base_tower_line(rho.algebra()->alpha()), detail::kummer_tower_line(s.phi.xi_field),
                           "x0..x" + std::to_string(h - 1) + " algebraically independent over k(xi)"};
    rep.extension.derivation_rules = {detail::base_rule_line(rho.algebra()->alpha()), detail::kummer_rule_line(s.phi.xi_field)};
    for (auto& r : detail::variable_rules(ring)) rep.extension.derivation_rules.push_back(std::move(r));
    rep.P = matrix_strings(out.P);
    rep.F = matrix_strings(out.F);
    rep.gauge = verify_gauge(out.P, out.F);
    rep.isomorphism = detail::inner_isomorphism(s, rho, p);
    rep.transcendence_degree = h;
    if (!(p == s.phi_rho)) rep.diagnostics.push_back("diag(P0, -P0) differs from Phi(rho)");
    return out;
}

using GenericField = MPoly<KummerRat>;

/// E = k(xi)(x_rs) with D(X) = P X and F = X.
inline SplitResult<GenericField> split_generic(const Matrix<KummerRat>& p) {
    if (!p.is_square()) throw PreconditionError("split_generic needs a square matrix");
    const std::size_t m = p.rows();
    const auto ring = make_linear_diff_ring(p);
    const GenericField like(ring);
    SplitResult<GenericField> out;
    out.P = embed_matrix(like, p);
    out.F = Matrix<GenericField>(m, m, like);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) out.F(r, s) = GenericField::variable(ring, r * m + s);
    auto& rep = out.report;
    rep.construction = "generic";
    const auto& xf = p.zero_element().field();
    rep.extension.tower = {detail::base_tower_line(p.zero_element().base_zero()), detail::kummer_tower_line(xf),
                           std::to_string(m * m) + " entries of X algebraically independent over k(xi)"};
    rep.extension.derivation_rules = {detail::base_rule_line(p.zero_element().base_zero()), detail::kummer_rule_line(xf)};
    for (auto& r : detail::variable_rules(ring)) rep.extension.derivation_rules.push_back(std::move(r));
    rep.P = matrix_strings(out.P);
    rep.F = matrix_strings(out.F);
    rep.gauge = verify_gauge(out.P, out.F);
    rep.transcendence_degree = static_cast<int>(m * m);
    rep.diagnostics.push_back("det X = " + determinant_expand(out.F).str());
    return out;
}

/// split_generic on P = compute_P(d), with the isomorphism verdict for d.
inline SplitResult<GenericField> split_generic(const Derivation<RatFunc>& d) {
    const PhiMap phi = phi_build(d.algebra());
    const GaugeMatrix g = compute_P(d, phi);
    auto out = split_generic(g.P);
    out.report.isomorphism = verify_diff_isomorphism(phi, d, g.P);
    for (const auto& s : g.diagnostics) out.report.diagnostics.push_back(s);
    return out;
}

/// c with Nr(gamma) = c beta^p for gamma = psi(theta_p)^-1, psi: u -> xi.
struct NormSplitReport {
    int p = 0;
    KummerRat gamma;
    RatFunc norm;
    RatFunc c;
    /// delta(c) = 0.
    bool verdict = false;
    /// Text of the split algebra (alpha, c beta^p).
    std::string split_algebra;
};

inline NormSplitReport norm_split_check(const Derivation<RatFunc>& d, const SymbolElem<RatFunc>& theta) {
    const auto& alg = d.algebra();
    const int m = alg->m();
    for (int i = 0; i < m; ++i)
        for (int j = 1; j < m; ++j)
            if (!d.du().coeff(i, j).is_zero()) throw PreconditionError("d(u) is not in k(u)");
    if (!d.apply(theta).is_zero()) throw PreconditionError("theta is not a constant of d");
    KummerRatFieldPtr xf;
    try {
        xf = kummer_extend(alg->alpha(), m, "xi");
    } catch (const ReducibleRadicand& e) {
        throw PreconditionError(std::string("x^m - alpha must be irreducible: ") + e.what());
    }
    NormSplitReport out;
    for (int p = 1; p < m && out.p == 0; ++p)
        for (int i = 0; i < m; ++i)
            if (!theta.coeff(i, p).is_zero()) {
                out.p = p;
                break;
            }
    if (out.p == 0) throw PreconditionError("theta has no invertible coefficient theta_p with 1 <= p <= m-1");
    std::vector<RatFunc> c;
    for (int i = 0; i < m; ++i) c.push_back(theta.coeff(i, out.p));
    out.gamma = KummerRat(xf, std::move(c)).inv();
    out.norm = out.gamma.norm();
    out.c = out.norm * power(alg->beta(), -out.p);
    out.verdict = out.c.derive().is_zero();
    out.split_algebra = "(" + alg->alpha().str() + ", " + (out.c * power(alg->beta(), out.p)).str() + ")";
    return out;
}

/// r and lambda with lambda * x = nu^r h^m.
struct RadicandWitness {
    int r = 0;
    Cyclo lambda;
    RatFunc h;
};

struct MaximalSubfieldReport {
    std::optional<RadicandWitness> alpha, beta;
    /// (k(gamma), D) cannot split (A, d_s).
    bool refuted = false;
    std::string reason;
};

namespace detail {

inline std::optional<RadicandWitness> radicand_witness(const RatFunc& x, const RatFunc& nu, int m) {
    for (int r = 1; r < m; ++r)
        if (auto pd = mth_power_up_to_constant(x * power(nu, -r), m)) return RadicandWitness{r, pd->c.inv(), pd->h};
    return std::nullopt;
}

}  // namespace detail

/// Searches r with lambda alpha in nu^r k^m (and likewise for beta); refutes when either search fails.
inline MaximalSubfieldReport maximal_subfield_necessary(const SymbolAlgebraPtr<RatFunc>& alg, const RatFunc& nu) {
    const int m = alg->m();
    const auto primes = detail::prime_divisors(m);
    if (primes.size() != 1 || primes.front() != m) throw PreconditionError("m must be prime");
    if (mth_power_up_to_constant(alg->alpha(), m)) throw PreconditionError("alpha lies in C k^m");
    if (mth_power_up_to_constant(alg->beta(), m)) throw PreconditionError("beta lies in C k^m");
    if (nu.is_zero()) throw PreconditionError("nu must be nonzero");
    MaximalSubfieldReport out;
    out.alpha = detail::radicand_witness(alg->alpha(), nu, m);
    out.beta = detail::radicand_witness(alg->beta(), nu, m);
    if (!out.alpha) {
        out.refuted = true;
        out.reason = "no r with lambda*alpha in nu^r k^m";
    } else if (!out.beta) {
        out.refuted = true;
        out.reason = "no r with mu*beta in nu^r k^m";
    }
    return out;
}

}  // namespace diffsym
