#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "printing.hpp"

namespace diffsym {

/// The symbol algebra (alpha, beta)_{K,w}: u^m = alpha, v^m = beta, vu = w uv.
template <FieldElement T>
class SymbolAlgebra {
public:
    struct Product {
        std::size_t target;
        T factor;
    };

    SymbolAlgebra(int m, T alpha, T beta, T omega)
        : m_(m), alpha_(std::move(alpha)), beta_(std::move(beta)), omega_(std::move(omega)) {
        if (m_ < 2) throw PreconditionError("symbol algebra degree must be at least 2");
        if (alpha_.is_zero() || beta_.is_zero()) throw PreconditionError("alpha and beta must be nonzero");
        if (!(power(omega_, m_) == omega_.one())) throw PreconditionError("w^m != 1");
        for (int d = 1; d < m_; ++d)
            if (m_ % d == 0 && power(omega_, d) == omega_.one()) throw PreconditionError("w is not a primitive m-th root of unity");
        for (int k = 0; k < m_; ++k) omega_powers_.push_back(power(omega_, k));
        build_table();
    }

    int m() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_ * m_); }
    const T& alpha() const { return alpha_; }
    const T& beta() const { return beta_; }
    const T& omega() const { return omega_; }
    /// w^k for any integer k.
    const T& omega_power(long k) const { return omega_powers_[static_cast<std::size_t>(((k % m_) + m_) % m_)]; }
    T scalar_zero() const { return alpha_.zero(); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * m_ + j); }

    /// u^i v^j * u^r v^s = w^(jr) u^(i+r) v^(j+s), reduced.
    const Product& product(std::size_t p, std::size_t q) const { return table_[p * dim() + q]; }

    bool same_as(const SymbolAlgebra& o) const {
        return this == &o || (m_ == o.m_ && alpha_ == o.alpha_ && beta_ == o.beta_ && omega_ == o.omega_);
    }

private:
    void build_table() {
        const std::size_t n = dim();
        table_.reserve(n * n);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                for (int r = 0; r < m_; ++r)
                    for (int s = 0; s < m_; ++s) {
                        T f = omega_power(static_cast<long>(j) * r);
                        int a = i + r, b = j + s;
                        if (a >= m_) {
                            a -= m_;
                            f = f * alpha_;
                        }
                        if (b >= m_) {
                            b -= m_;
                            f = f * beta_;
                        }
                        table_.push_back(Product{index(a, b), std::move(f)});
                    }
    }

    int m_;
    T alpha_, beta_, omega_;
    std::vector<T> omega_powers_;
    std::vector<Product> table_;
};

template <FieldElement T>
using SymbolAlgebraPtr = std::shared_ptr<const SymbolAlgebra<T>>;

template <FieldElement T>
SymbolAlgebraPtr<T> make_symbol_algebra(int m, T alpha, T beta, T omega) {
    return std::make_shared<const SymbolAlgebra<T>>(m, std::move(alpha), std::move(beta), std::move(omega));
}

/// sum c_ij u^i v^j with coefficients in the algebra's scalar field.
template <FieldElement T>
class SymbolElem {
public:
    using Scalar = T;

    SymbolElem() = default;
    explicit SymbolElem(SymbolAlgebraPtr<T> alg) : alg_(std::move(alg)), c_(alg_->dim(), alg_->scalar_zero()) {}
    SymbolElem(SymbolAlgebraPtr<T> alg, std::vector<T> coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
        if (c_.size() != alg_->dim()) throw MismatchError("symbol element needs m^2 coefficients");
    }

    static SymbolElem basis(const SymbolAlgebraPtr<T>& alg, int i, int j, std::optional<T> c = std::nullopt) {
        SymbolElem r(alg);
        r.c_[alg->index(i, j)] = c ? *c : alg->scalar_zero().one();
        return r;
    }
    static SymbolElem scalar(const SymbolAlgebraPtr<T>& alg, const T& c) { return basis(alg, 0, 0, c); }
    static SymbolElem u(const SymbolAlgebraPtr<T>& alg) { return basis(alg, 1, 0); }
    static SymbolElem v(const SymbolAlgebraPtr<T>& alg) { return basis(alg, 0, 1); }

    const SymbolAlgebraPtr<T>& algebra() const { return alg_; }
    int m() const { return alg_->m(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& coeff(int i, int j) const { return c_[alg_->index(i, j)]; }
    /// Copy with the (i, j) coefficient replaced.
    SymbolElem with(int i, int j, const T& c) const {
        SymbolElem r = *this;
        r.c_[alg_->index(i, j)] = c;
        return r;
    }

    SymbolElem zero() const { return SymbolElem(alg_); }
    SymbolElem one() const { return scalar(alg_, alg_->scalar_zero().one()); }
    SymbolElem from_integer(long n) const { return scalar(alg_, alg_->scalar_zero().from_integer(n)); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_scalar() const {
        for (std::size_t k = 1; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return false;
        return true;
    }
    bool is_trace_zero() const { return c_[0].is_zero(); }
    /// tr(x) = m^2 c_00.
    T trace() const { return c_[0] * c_[0].from_integer(static_cast<long>(alg_->dim())); }

    friend SymbolElem operator+(const SymbolElem& a, const SymbolElem& b) {
        check_same(a, b);
        SymbolElem r = a;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] + b.c_[k];
        return r;
    }
    friend SymbolElem operator-(const SymbolElem& a, const SymbolElem& b) {
        check_same(a, b);
        SymbolElem r = a;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] - b.c_[k];
        return r;
    }
    friend SymbolElem operator-(const SymbolElem& a) {
        SymbolElem r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend SymbolElem operator*(const SymbolElem& a, const SymbolElem& b) {
        check_same(a, b);
        SymbolElem r(a.alg_);
        const std::size_t n = a.c_.size();
        for (std::size_t p = 0; p < n; ++p) {
            if (a.c_[p].is_zero()) continue;
            for (std::size_t q = 0; q < n; ++q) {
                if (b.c_[q].is_zero()) continue;
                const auto& pr = a.alg_->product(p, q);
                r.c_[pr.target] = r.c_[pr.target] + a.c_[p] * b.c_[q] * pr.factor;
            }
        }
        return r;
    }
    friend bool operator==(const SymbolElem& a, const SymbolElem& b) {
        if (a.alg_ != b.alg_ && !(a.alg_ && b.alg_ && a.alg_->same_as(*b.alg_))) return false;
        return a.c_ == b.c_;
    }

    SymbolElem scaled(const T& s) const {
        SymbolElem r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    SymbolElem pow(int e) const {
        if (e < 0) throw PreconditionError("negative power of a symbol algebra element");
        SymbolElem r = one(), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    std::string str() const {
        std::vector<std::string> terms;
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < m(); ++j) {
                const T& c = coeff(i, j);
                if (c.is_zero()) continue;
                std::string mono = detail::power_string("u", i);
                const std::string vj = detail::power_string("v", j);
                if (!vj.empty()) mono += (mono.empty() ? "" : "*") + vj;
                terms.push_back(detail::format_term(c.str(), c.is_compound(), mono));
            }
        return detail::join_terms(terms);
    }

private:
    static void check_same(const SymbolElem& a, const SymbolElem& b) {
        if (a.alg_ == b.alg_) return;
        if (!a.alg_ || !b.alg_ || !a.alg_->same_as(*b.alg_)) throw MismatchError("symbol algebra elements from different algebras");
    }

    SymbolAlgebraPtr<T> alg_;
    std::vector<T> c_;
};

template <FieldElement T>
SymbolElem<T> sym_mul(const SymbolElem<T>& a, const SymbolElem<T>& b) {
    return a * b;
}

template <FieldElement T>
T sym_trace(const SymbolElem<T>& a) {
    return a.trace();
}

/// Matrix of a K-linear map A -> A in the basis u^i v^j (column k = image of basis k).
template <FieldElement T, class F>
Matrix<T> linear_map_matrix(const SymbolAlgebraPtr<T>& alg, F&& f) {
    const std::size_t n = alg->dim();
    Matrix<T> mat(n, n, alg->scalar_zero());
    for (int i = 0; i < alg->m(); ++i)
        for (int j = 0; j < alg->m(); ++j) {
            const SymbolElem<T> img = f(SymbolElem<T>::basis(alg, i, j));
            const std::size_t col = alg->index(i, j);
            for (std::size_t r = 0; r < n; ++r) mat(r, col) = img.coeffs()[r];
        }
    return mat;
}

/// Basis of the centralizer {x : xa = ax}.
template <FieldElement T>
std::vector<SymbolElem<T>> centralizer(const SymbolElem<T>& a) {
    const auto& alg = a.algebra();
    const auto mat = linear_map_matrix(alg, [&](const SymbolElem<T>& x) { return x * a - a * x; });
    std::vector<SymbolElem<T>> out;
    for (auto& k : kernel(mat)) out.emplace_back(alg, std::move(k));
    return out;
}

/// Monic polynomial of least degree annihilating a.
template <FieldElement T>
Poly<T> minimal_polynomial(const SymbolElem<T>& a) {
    const auto& alg = a.algebra();
    const std::size_t n = alg->dim();
    const T zero = alg->scalar_zero();
    std::vector<SymbolElem<T>> powers{a.one()};
    for (std::size_t d = 1; d <= n; ++d) {
        const SymbolElem<T> next = powers.back() * a;
        Matrix<T> mat(n, powers.size(), zero);
        for (std::size_t c = 0; c < powers.size(); ++c)
            for (std::size_t r = 0; r < n; ++r) mat(r, c) = powers[c].coeffs()[r];
        const auto sol = solve(mat, next.coeffs());
        if (sol.particular) {
            // a^d = sum x_i a^i, so z^d - sum x_i z^i annihilates a.
            std::vector<T> coeffs;
            for (const auto& x : *sol.particular) coeffs.push_back(-x);
            coeffs.push_back(zero.one());
            return Poly<T>(zero, std::move(coeffs));
        }
        powers.push_back(next);
    }
    throw Error("no annihilating polynomial of degree <= m^2 found");
}

/// Coordinates c with x = sum c_i gamma^i over i < deg minpoly(gamma), if any.
template <FieldElement T>
std::optional<std::vector<T>> coordinates_in_powers(const SymbolElem<T>& x, const SymbolElem<T>& gamma) {
    const auto& alg = gamma.algebra();
    const std::size_t n = alg->dim();
    const int d = minimal_polynomial(gamma).degree();
    Matrix<T> mat(n, static_cast<std::size_t>(d), alg->scalar_zero());
    SymbolElem<T> p = gamma.one();
    for (int c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < n; ++r) mat(r, static_cast<std::size_t>(c)) = p.coeffs()[r];
        p = p * gamma;
    }
    auto sol = solve(mat, x.coeffs());
    return sol.particular;
}

/// True when x lies in K[gamma] = span{1, gamma, ..., gamma^(d-1)}.
template <FieldElement T>
bool in_generated_subfield(const SymbolElem<T>& x, const SymbolElem<T>& gamma) {
    return coordinates_in_powers(x, gamma).has_value();
}

/// The same algebra with scalars extended to the parent of `like`.
template <FieldElement E, FieldElement T>
SymbolAlgebraPtr<E> extend_scalars(const SymbolAlgebraPtr<T>& alg, const E& like) {
    return make_symbol_algebra(alg->m(), embed(like, alg->alpha()), embed(like, alg->beta()), embed(like, alg->omega()));
}

/// x (x) 1 in A (x)_K E.
template <FieldElement E, FieldElement T>
SymbolElem<E> lift(const SymbolElem<T>& x, const SymbolAlgebraPtr<E>& target) {
    if (target->m() != x.m()) throw MismatchError("lift into an algebra of different degree");
    const E like = target->scalar_zero();
    std::vector<E> c;
    c.reserve(x.coeffs().size());
    for (const auto& s : x.coeffs()) c.push_back(embed(like, s));
    return SymbolElem<E>(target, std::move(c));
}

}  // namespace diffsym
