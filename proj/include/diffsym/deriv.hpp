#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scalars.hpp"
#include "symalg.hpp"

namespace diffsym {

/// d(u) = sum a_ij u^i v^j and d(v) = sum b_ij u^i v^j.
template <FieldElement T>
struct DerivationData {
    int m = 0;
    std::vector<T> a, b;

    DerivationData() = default;
    DerivationData(int m_, const T& zero)
        : m(m_), a(static_cast<std::size_t>(m_ * m_), zero), b(static_cast<std::size_t>(m_ * m_), zero) {}

    T& a_at(int i, int j) { return a[static_cast<std::size_t>(i * m + j)]; }
    T& b_at(int i, int j) { return b[static_cast<std::size_t>(i * m + j)]; }
    const T& a_at(int i, int j) const { return a[static_cast<std::size_t>(i * m + j)]; }
    const T& b_at(int i, int j) const { return b[static_cast<std::size_t>(i * m + j)]; }

    friend bool operator==(const DerivationData&, const DerivationData&) = default;
};

/// Outcome of validate(): `failing` holds tags among A, B, REL1..REL4.
struct DerivationVerdict {
    bool ok = true;
    std::vector<std::string> failing;
    /// Whether the matrix identity T_alpha^-1 B' T_beta = -A' holds literally.
    bool tgamma_holds = true;
    /// TGAMMA when the matrix identity and REL1/REL4 disagree.
    std::vector<std::string> diagnostics;
};

namespace detail {

template <FieldElement T>
T log_derivative_over(const T& x, int m) {
    return x.derive() * (x * x.from_integer(m)).inv();
}

// Minor of a grid: drop row `dr` and column `dc`.
template <FieldElement T>
Matrix<T> grid_minor(const std::vector<T>& g, int m, int dr, int dc) {
    Matrix<T> out(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(m - 1), g.front().zero());
    for (int i = 0, ii = 0; i < m; ++i) {
        if (i == dr) continue;
        for (int j = 0, jj = 0; j < m; ++j) {
            if (j == dc) continue;
            out(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj)) = g[static_cast<std::size_t>(i * m + j)];
            ++jj;
        }
        ++ii;
    }
    return out;
}

// T_gamma as printed: (1-w)/gamma in the top-right corner and w^(k+1) - w
// on the subdiagonal.
template <FieldElement T>
Matrix<T> t_gamma(const SymbolAlgebra<T>& alg, const T& gamma) {
    const int n = alg.m() - 1;
    const T one = gamma.one();
    Matrix<T> out(static_cast<std::size_t>(n), static_cast<std::size_t>(n), gamma.zero());
    out(0, static_cast<std::size_t>(n - 1)) = (one - alg.omega()) * gamma.inv();
    for (int k = 1; k < n; ++k)
        out(static_cast<std::size_t>(k), static_cast<std::size_t>(k - 1)) = alg.omega_power(k + 1) - alg.omega();
    return out;
}

template <FieldElement T>
Matrix<T> t_gamma_inverse(const SymbolAlgebra<T>& alg, const T& gamma) {
    const int n = alg.m() - 1;
    Matrix<T> out(static_cast<std::size_t>(n), static_cast<std::size_t>(n), gamma.zero());
    const T one = gamma.one();
    out(static_cast<std::size_t>(n - 1), 0) = gamma * (one - alg.omega()).inv();
    for (int k = 1; k < n; ++k)
        out(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k)) = (alg.omega_power(k + 1) - alg.omega()).inv();
    return out;
}

}  // namespace detail

/// Checks conditions (a), (b) and the four coefficient relations of vu = w uv.
/// With `base_derivation` false the derivation is taken relative to delta = 0.
template <FieldElement T>
    requires DifferentialElement<T>
DerivationVerdict validate(const SymbolAlgebra<T>& alg, const DerivationData<T>& d, bool base_derivation = true) {
    const int m = alg.m();
    if (d.m != m) throw MismatchError("derivation data degree does not match the algebra");
    const T& al = alg.alpha();
    const T& be = alg.beta();
    const T& w = alg.omega();
    const T one = al.one();
    const T zero = al.zero();
    DerivationVerdict v;
    auto fail = [&](const char* tag) {
        v.ok = false;
        v.failing.emplace_back(tag);
    };

    const T ra = base_derivation ? detail::log_derivative_over(al, m) : zero;
    const T rb = base_derivation ? detail::log_derivative_over(be, m) : zero;
    bool cond_a = d.a_at(1, 0) == ra;
    bool cond_b = d.b_at(0, 1) == rb;
    for (int i = 0; i < m; ++i)
        if (i != 1 && !d.a_at(i, 0).is_zero()) cond_a = false;
    for (int j = 0; j < m; ++j)
        if (j != 1 && !d.b_at(0, j).is_zero()) cond_b = false;
    if (!cond_a) fail("A");
    if (!cond_b) fail("B");

    const bool rel1 = (d.a_at(0, m - 1) * be + d.b_at(m - 1, 0) * al).is_zero();
    bool rel2 = true, rel3 = true, rel4 = true;
    for (int j = 1; j < m; ++j)
        if (!(d.a_at(0, j - 1) * (one - w) + d.b_at(m - 1, j) * (alg.omega_power(j) - w) * al).is_zero()) rel2 = false;
    for (int i = 1; i < m; ++i)
        if (!(d.a_at(i, m - 1) * (alg.omega_power(i) - w) * be + d.b_at(i - 1, 0) * (one - w)).is_zero()) rel3 = false;
    for (int i = 1; i < m; ++i)
        for (int j = 1; j < m; ++j)
            if (!(d.a_at(i, j - 1) * (alg.omega_power(i) - w) + d.b_at(i - 1, j) * (alg.omega_power(j) - w)).is_zero())
                rel4 = false;
    if (!rel1) fail("REL1");
    if (!rel2) fail("REL2");
    if (!rel3) fail("REL3");
    if (!rel4) fail("REL4");

    const Matrix<T> a_minor = detail::grid_minor(d.a, m, 1, 0);
    const Matrix<T> b_minor = detail::grid_minor(d.b, m, 0, 1);
    const Matrix<T> lhs = detail::t_gamma_inverse(alg, al) * b_minor * detail::t_gamma(alg, be);
    v.tgamma_holds = (lhs == -a_minor);
    if (v.tgamma_holds != (rel1 && rel4)) v.diagnostics.emplace_back("TGAMMA");
    return v;
}

/// A derivation of A given by d(u), d(v) and either the base derivation or zero on K.
template <FieldElement T>
    requires DifferentialElement<T>
class Derivation {
public:
    Derivation(SymbolAlgebraPtr<T> alg, DerivationData<T> data, bool extends_base = true)
        : alg_(std::move(alg)), data_(std::move(data)), extends_base_(extends_base) {
        if (data_.m != alg_->m()) throw MismatchError("derivation data degree does not match the algebra");
        du_ = SymbolElem<T>(alg_, data_.a);
        dv_ = SymbolElem<T>(alg_, data_.b);
        build_basis_images();
    }

    const SymbolAlgebraPtr<T>& algebra() const { return alg_; }
    const DerivationData<T>& data() const { return data_; }
    bool extends_base() const { return extends_base_; }
    const SymbolElem<T>& du() const { return du_; }
    const SymbolElem<T>& dv() const { return dv_; }
    /// d(u^i v^j).
    const SymbolElem<T>& basis_image(int i, int j) const { return images_[alg_->index(i, j)]; }

    /// d(sum x_ij u^i v^j) = sum delta(x_ij) u^i v^j + x_ij d(u^i v^j).
    SymbolElem<T> apply(const SymbolElem<T>& x) const {
        std::vector<T> out(alg_->dim(), alg_->scalar_zero());
        for (std::size_t p = 0; p < alg_->dim(); ++p) {
            const T& c = x.coeffs()[p];
            if (c.is_zero()) continue;
            if (extends_base_) out[p] = out[p] + c.derive();
            const auto& img = images_[p].coeffs();
            for (std::size_t q = 0; q < out.size(); ++q)
                if (!img[q].is_zero()) out[q] = out[q] + c * img[q];
        }
        return SymbolElem<T>(alg_, std::move(out));
    }

    DerivationVerdict validate() const { return diffsym::validate(*alg_, data_, extends_base_); }

private:
    // d(u^i) = d(u^(i-1)) u + u^(i-1) d(u); likewise for v; then d(u^i v^j) = d(u^i) v^j + u^i d(v^j).
    void build_basis_images() {
        const int m = alg_->m();
        const auto u = SymbolElem<T>::u(alg_), v = SymbolElem<T>::v(alg_);
        std::vector<SymbolElem<T>> upow{u.one()}, vpow{u.one()}, du{u.zero()}, dv{u.zero()};
        for (int i = 1; i < m; ++i) {
            du.push_back(du.back() * u + upow.back() * du_);
            upow.push_back(upow.back() * u);
            dv.push_back(dv.back() * v + vpow.back() * dv_);
            vpow.push_back(vpow.back() * v);
        }
        images_.clear();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) images_.push_back(du[static_cast<std::size_t>(i)] * vpow[static_cast<std::size_t>(j)] +
                                                          upow[static_cast<std::size_t>(i)] * dv[static_cast<std::size_t>(j)]);
    }

    SymbolAlgebraPtr<T> alg_;
    DerivationData<T> data_;
    bool extends_base_;
    SymbolElem<T> du_, dv_;
    std::vector<SymbolElem<T>> images_;
};

/// d_s(u) = delta(alpha)/(m alpha) u, d_s(v) = delta(beta)/(m beta) v.
template <FieldElement T>
    requires DifferentialElement<T>
Derivation<T> standard_derivation(const SymbolAlgebraPtr<T>& alg) {
    DerivationData<T> d(alg->m(), alg->scalar_zero());
    d.a_at(1, 0) = detail::log_derivative_over(alg->alpha(), alg->m());
    d.b_at(0, 1) = detail::log_derivative_over(alg->beta(), alg->m());
    return Derivation<T>(alg, std::move(d), true);
}

template <FieldElement T>
DerivationData<T> inner_data(const SymbolElem<T>& theta) {
    const auto& alg = theta.algebra();
    const auto u = SymbolElem<T>::u(alg), v = SymbolElem<T>::v(alg);
    DerivationData<T> d;
    d.m = alg->m();
    d.a = (u * theta - theta * u).coeffs();
    d.b = (v * theta - theta * v).coeffs();
    return d;
}

/// The inner derivation x -> x theta - theta x; zero on K.
template <FieldElement T>
    requires DifferentialElement<T>
Derivation<T> inner_derivation(const SymbolElem<T>& theta) {
    return Derivation<T>(theta.algebra(), inner_data(theta), false);
}

/// d + inner(theta).
template <FieldElement T>
    requires DifferentialElement<T>
Derivation<T> add_inner(const Derivation<T>& d, const SymbolElem<T>& theta) {
    DerivationData<T> sum = d.data();
    const DerivationData<T> in = inner_data(theta);
    for (std::size_t k = 0; k < sum.a.size(); ++k) {
        sum.a[k] = sum.a[k] + in.a[k];
        sum.b[k] = sum.b[k] + in.b[k];
    }
    return Derivation<T>(d.algebra(), std::move(sum), d.extends_base());
}

/// The unique theta in A^0 with d = d_s + inner(theta).
template <FieldElement T>
    requires DifferentialElement<T>
SymbolElem<T> decompose(const Derivation<T>& d) {
    const auto verdict = d.validate();
    if (!verdict.ok) throw PreconditionError("decompose: invalid derivation data");
    const auto& alg = d.algebra();
    const int m = alg->m();
    const auto& data = d.data();
    const T one = alg->scalar_zero().one();
    SymbolElem<T> theta(alg);
    for (int i = 1; i < m; ++i) theta = theta.with(i, 0, data.b_at(i, 1) * (alg->omega_power(i) - one).inv());
    for (int j = 1; j < m; ++j) {
        const T inv = (one - alg->omega_power(j)).inv();
        for (int i = 0; i + 1 < m; ++i) theta = theta.with(i, j, data.a_at(i + 1, j) * inv);
        theta = theta.with(m - 1, j, data.a_at(0, j) * inv * alg->alpha().inv());
    }
    return theta;
}

/// Constants of inner(theta) over a base with zero derivation: the centralizer of theta.
template <FieldElement T>
    requires DifferentialElement<T>
std::vector<SymbolElem<T>> constants_inner(const SymbolElem<T>& theta) {
    if (!theta.algebra()->scalar_zero().derivation_is_zero())
        throw PreconditionError("constants_inner requires a base field with zero derivation");
    auto basis = centralizer(theta);
    if (static_cast<int>(basis.size()) < theta.m()) throw Error("centralizer dimension below m");
    return basis;
}

/// lambda u^i v^j with d_s(lambda u^i v^j) = 0, from alpha^-i beta^-j = c h^m.
struct ConstantWitness {
    int i = 0, j = 0;
    Cyclo c;
    RatFunc lambda;
    SymbolElem<RatFunc> element;
};

struct StandardConstants {
    std::vector<ConstantWitness> witnesses;
    /// True when the constants of d_s are larger than those of K.
    bool new_constants() const { return !witnesses.empty(); }
};

inline StandardConstants constants_standard(const SymbolAlgebraPtr<RatFunc>& alg) {
    const int m = alg->m();
    const auto ds = standard_derivation(alg);
    StandardConstants out;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == 0 && j == 0) continue;
            const RatFunc x = power(alg->alpha(), -i) * power(alg->beta(), -j);
            const auto pd = mth_power_up_to_constant(x, m);
            if (!pd) continue;
            // lambda^m is a constant multiple of alpha^-i beta^-j, so its log-derivative cancels d_s on u^i v^j.
            ConstantWitness w{i, j, pd->c, pd->h, SymbolElem<RatFunc>::basis(alg, i, j, pd->h)};
            if (!ds.apply(w.element).is_zero()) throw Error("power witness is not a constant of d_s");
            out.witnesses.push_back(std::move(w));
        }
    return out;
}

/// True when d(K[gamma]) lies in K[gamma], tested on gamma itself.
template <FieldElement T>
    requires DifferentialElement<T>
bool subfield_stable(const Derivation<T>& d, const SymbolElem<T>& gamma) {
    return in_generated_subfield(d.apply(gamma), gamma);
}

/// Symbol algebra over Q(w)(t) with the field's own w.
inline SymbolAlgebraPtr<RatFunc> make_symbol_algebra(int m, const RatFunc& alpha, const RatFunc& beta) {
    if (alpha.field()->m() != m) throw MismatchError("base field conductor must equal the algebra degree");
    const RatFunc w = alpha.embed_base(Cyclo::omega_power(alpha.field()->cyclo(), 1));
    return make_symbol_algebra<RatFunc>(m, alpha, beta, w);
}

}  // namespace diffsym
