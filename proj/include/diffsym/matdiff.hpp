#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpoly.hpp"
#include "ode.hpp"
#include "scalars.hpp"

namespace diffsym {

/// Entry-wise derivation.
template <DifferentialElement E>
Matrix<E> delta_c(const Matrix<E>& x) {
    return x.map([](const E& e) { return e.derive(); });
}

/// d_P(X) = delta^c(X) + XP - PX.
template <DifferentialElement E>
Matrix<E> apply_dP(const Matrix<E>& p, const Matrix<E>& x) {
    if (p.rows() != x.rows() || p.cols() != x.cols() || !p.is_square()) throw MismatchError("apply_dP: size mismatch");
    return delta_c(x) + x * p - p * x;
}

/// Result of an exact matrix identity check.
struct MatrixVerdict {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing_entry;
    std::string lhs, rhs;
    std::string reason;
};

/// First entry where a and b differ.
template <RingElement E>
MatrixVerdict compare_matrices(const Matrix<E>& a, const Matrix<E>& b) {
    MatrixVerdict v;
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        v.ok = false;
        v.reason = "shape mismatch";
        return v;
    }
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!(a(r, c) == b(r, c))) {
                v.ok = false;
                v.failing_entry = {r, c};
                v.lhs = a(r, c).str();
                v.rhs = b(r, c).str();
                v.reason = "entries differ";
                return v;
            }
    return v;
}

template <RingElement E>
E matrix_determinant(const Matrix<E>& f) {
    if constexpr (has_general_inverse<E>) {
        return determinant(f);
    } else {
        return determinant_expand(f);
    }
}

/// Checks delta^c(F) = P F and det F != 0.
template <DifferentialElement E>
MatrixVerdict verify_gauge(const Matrix<E>& p, const Matrix<E>& f) {
    if (!p.is_square() || !f.is_square() || p.rows() != f.rows()) {
        MatrixVerdict v;
        v.ok = false;
        v.reason = "P and F must be square of the same size";
        return v;
    }
    MatrixVerdict v = compare_matrices(delta_c(f), p * f);
    if (!v.ok) {
        v.reason = "delta^c(F) != P F";
        return v;
    }
    if (matrix_determinant(f).is_zero()) {
        v.ok = false;
        v.reason = "det F = 0";
    }
    return v;
}

/// diag(lambda_1..lambda_m) with f in the top-right corner.
inline Matrix<RatFunc> corner_matrix(const std::vector<Cyclo>& lambdas, const RatFunc& f) {
    const std::size_t m = lambdas.size();
    if (m < 2) throw PreconditionError("at least two constants are required");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (lambdas[i] == lambdas[j]) throw PreconditionError("constants lambda_i must be pairwise distinct");
    Matrix<RatFunc> p(m, m, f.zero());
    for (std::size_t i = 0; i < m; ++i) p(i, i) = f.embed_base(lambdas[i]);
    p(0, m - 1) = p(0, m - 1) + f;
    return p;
}

/// Diagonal constants and corner of a matrix of the shape built by corner_matrix.
struct CornerShape {
    std::vector<Cyclo> lambdas;
    RatFunc f;
};

inline CornerShape corner_shape(const Matrix<RatFunc>& p) {
    if (!p.is_square() || p.rows() < 2) throw PreconditionError("square matrix of size >= 2 required");
    const std::size_t m = p.rows();
    CornerShape s;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            if (r == c) {
                if (!p(r, r).is_constant_element()) throw PreconditionError("diagonal entries of P must be constants");
                s.lambdas.push_back(p(r, r).constant_value());
            } else if (!(r == 0 && c == m - 1) && !p(r, c).is_zero()) {
                throw PreconditionError("constants are only computed for diagonal P or diagonal P plus a top-right corner");
            }
        }
    s.f = p(0, m - 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (s.lambdas[i] == s.lambdas[j]) throw PreconditionError("diagonal constants of P must be pairwise distinct");
    return s;
}

/// Basis over C of {X : d_P(X) = 0} for P = diag(lambda) + f E_{1m}.
///
/// Entry (r, s) satisfies x' + (lambda_s - lambda_r) x = 0 except in row 1 and
/// column m, where the corner couples in; after those vanish, the corner x
/// solves x' + (lambda_m - lambda_1) x = -f (mu_1 - mu_m).
inline std::vector<Matrix<RatFunc>> corner_constants(const Matrix<RatFunc>& p) {
    const CornerShape shape = corner_shape(p);
    const std::size_t m = p.rows();
    const RatFunc zero = p.zero_element();

    // Uncoupled entries: only x = 0 off the diagonal, only constants on it.
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
            if (r == 0 && s == m - 1) continue;
            const OdeSolution sol = rational_ode_solve(shape.lambdas[s] - shape.lambdas[r], zero);
            const bool only_zero = sol.particular && sol.particular->is_zero() && sol.homogeneous.empty();
            const bool constants = sol.homogeneous.size() == 1 && sol.homogeneous[0].is_constant_element();
            if (r != s && !only_zero) throw Error("off-diagonal entry admits a nonzero rational solution");
            if (r == s && !constants) throw Error("diagonal entry is not forced to be a constant");
        }

    const Cyclo delta = shape.lambdas[m - 1] - shape.lambdas[0];
    const OdeSolution corner = rational_ode_solve(delta, -shape.f);
    if (!corner.homogeneous.empty()) throw Error("corner equation has a nonzero homogeneous solution");

    std::vector<Matrix<RatFunc>> basis;
    for (std::size_t r = 1; r + 1 < m; ++r) basis.push_back(Matrix<RatFunc>::unit(m, r, r, zero));
    if (corner.particular) {
        // x = (mu_1 - mu_m) x_p.
        Matrix<RatFunc> e1 = Matrix<RatFunc>::unit(m, 0, 0, zero);
        e1(0, m - 1) = *corner.particular;
        Matrix<RatFunc> em = Matrix<RatFunc>::unit(m, m - 1, m - 1, zero);
        em(0, m - 1) = -*corner.particular;
        basis.insert(basis.begin(), e1);
        basis.push_back(em);
    } else {
        // No rational x_p: mu_1 = mu_m and the corner vanishes.
        Matrix<RatFunc> e = Matrix<RatFunc>::unit(m, 0, 0, zero);
        e(m - 1, m - 1) = zero.one();
        basis.insert(basis.begin(), e);
    }
    for (const auto& x : basis)
        if (!apply_dP(p, x).is_zero()) throw Error("constant basis element is not annihilated by d_P");
    return basis;
}

/// Outcome of checking the contradiction chain for one candidate L = k(X), X^m = nu I.
struct CyclicSubfieldReport {
    bool hypotheses_hold = true;
    std::string hypothesis_failure;
    /// d_P(X) = (nu'/(m nu)) X, which d_P(L) in L would force.
    bool stable = false;
    std::vector<std::pair<std::size_t, std::size_t>> forced_zero;
    /// Every off-diagonal entry is forced to vanish.
    bool degenerate = false;
    std::string contradiction;
    /// d_P(L) is not contained in L.
    bool refuted = false;
};

inline CyclicSubfieldReport no_cyclic_subfield_witness(const Matrix<RatFunc>& p, const Matrix<RatFunc>& x, const RatFunc& nu) {
    CyclicSubfieldReport rep;
    CornerShape shape;
    try {
        shape = corner_shape(p);
    } catch (const PreconditionError& e) {
        rep.hypotheses_hold = false;
        rep.hypothesis_failure = e.what();
        return rep;
    }
    const std::size_t m = p.rows();
    const int mi = static_cast<int>(m);
    if (x.rows() != m || x.cols() != m) throw MismatchError("candidate matrix has the wrong size");
    if (nu.is_zero()) {
        rep.hypotheses_hold = false;
        rep.hypothesis_failure = "nu must be nonzero";
        return rep;
    }
    if (!(x.pow(mi) == Matrix<RatFunc>::identity(m, nu).scaled(nu))) {
        rep.hypotheses_hold = false;
        rep.hypothesis_failure = "X^m != nu I";
        return rep;
    }
    if (const auto pd = mth_power_up_to_constant(nu, mi); pd && constant_is_power(pd->c, mi)) {
        rep.hypotheses_hold = false;
        rep.hypothesis_failure = "nu is an m-th power in k, so the contradiction x_ii^m = nu does not arise";
        return rep;
    }

    const RatFunc rate = nu.derive() * (nu * nu.from_integer(mi)).inv();
    rep.stable = (apply_dP(p, x) == x.scaled(rate));

    // Off-diagonal entries with their own equation x' = (rate - mu) x: z = x^m / nu solves z' + m mu z = 0.
    bool all_forced = true;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
            if (r == s || (r == 0 && s == m - 1)) continue;
            const Cyclo mu = shape.lambdas[s] - shape.lambdas[r];
            const OdeSolution sol = rational_ode_solve(mu * mu.from_integer(mi), nu.zero());
            if (sol.homogeneous.empty())
                rep.forced_zero.emplace_back(r, s);
            else
                all_forced = false;
        }
    rep.degenerate = all_forced;
    if (!rep.stable) {
        rep.refuted = true;
        rep.contradiction = "d_P(X) != (nu'/(m nu)) X, so d_P(L) is not contained in L";
    } else if (rep.degenerate) {
        // A stable X would be diagonal with x_ii^m = nu, putting nu in k^m.
        rep.refuted = true;
        rep.contradiction = "off-diagonal entries vanish, so x_ii^m = nu would make nu an m-th power";
    }
    return rep;
}

}  // namespace diffsym
