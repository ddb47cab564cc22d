#include <gtest/gtest.h>

#include "diffsym/diffsym.hpp"

using namespace diffsym;

namespace {

using Elem = SymbolElem<RatFunc>;

SymbolAlgebraPtr<RatFunc> algebra(int m, BaseDerivation d = BaseDerivation::ddt) {
    const RatFunc t = RatFunc::t(make_ratfunc_field(m, d));
    return make_symbol_algebra(m, t, t + t.one());
}

/// Standard data for m = 3 with one coefficient bumped by 1.
std::vector<std::string> perturbed_tags(bool in_a, int i, int j) {
    const auto alg = algebra(3);
    auto data = standard_derivation(alg).data();
    auto& slot = in_a ? data.a_at(i, j) : data.b_at(i, j);
    slot = slot + slot.one();
    return validate(*alg, data).failing;
}

}  // namespace

TEST(Derivation, StandardDataValidates) {
    for (int m : {2, 3, 4}) {
        const auto alg = algebra(m);
        const auto v = standard_derivation(alg).validate();
        EXPECT_TRUE(v.ok) << m;
        EXPECT_TRUE(v.failing.empty());
    }
}

TEST(Derivation, StandardValuesOnGenerators) {
    const auto alg = algebra(3);
    const auto ds = standard_derivation(alg);
    const RatFunc t = alg->alpha();
    // alpha = t, beta = t+1: d(u) = u/(3t), d(v) = v/(3(t+1)).
    EXPECT_EQ(ds.du(), Elem::u(alg).scaled((t.from_integer(3) * t).inv()));
    EXPECT_EQ(ds.dv(), Elem::v(alg).scaled((t.from_integer(3) * (t + t.one())).inv()));
}

TEST(Derivation, SingleConditionPerturbationsAreTagged) {
    EXPECT_EQ(perturbed_tags(true, 1, 0), std::vector<std::string>{"A"});
    EXPECT_EQ(perturbed_tags(false, 0, 1), std::vector<std::string>{"B"});
    EXPECT_EQ(perturbed_tags(true, 0, 2), std::vector<std::string>{"REL1"});
    EXPECT_EQ(perturbed_tags(false, 2, 2), std::vector<std::string>{"REL2"});
    EXPECT_EQ(perturbed_tags(true, 2, 2), std::vector<std::string>{"REL3"});
    EXPECT_EQ(perturbed_tags(false, 1, 2), std::vector<std::string>{"REL4"});
}

TEST(Derivation, DegreeMismatchThrows) {
    const auto alg = algebra(3);
    EXPECT_THROW(validate(*alg, standard_derivation(algebra(2)).data()), MismatchError);
}

TEST(Derivation, LeibnizOnRandomValidDerivations) {
    Rng rng(default_seed() + 20);
    for (int m : {2, 3}) {
        const auto alg = algebra(m);
        for (int n = 0; n < 5; ++n) {
            const auto d = random_valid_derivation(rng, alg);
            ASSERT_TRUE(d.validate().ok);
            for (int k = 0; k < 20; ++k) {
                const Elem a = random_sparse_symbol(rng, alg), b = random_sparse_symbol(rng, alg);
                EXPECT_EQ(d.apply(a * b), d.apply(a) * b + a * d.apply(b));
            }
        }
    }
}

TEST(Derivation, ExtendsBaseDerivationOnScalars) {
    const auto alg = algebra(2);
    const auto ds = standard_derivation(alg);
    const RatFunc t = alg->alpha();
    EXPECT_EQ(ds.apply(Elem::scalar(alg, t * t)), Elem::scalar(alg, t.from_integer(2) * t));
    const auto inner = inner_derivation(Elem::u(alg));
    EXPECT_TRUE(inner.apply(Elem::scalar(alg, t)).is_zero());
}

TEST(Derivation, InnerDerivationIsCommutator) {
    Rng rng(default_seed() + 21);
    const auto alg = algebra(3);
    const Elem theta = random_symbol(rng, alg, true);
    const auto d = inner_derivation(theta);
    EXPECT_TRUE(d.validate().ok);
    for (int k = 0; k < 5; ++k) {
        const Elem x = random_symbol(rng, alg);
        EXPECT_EQ(d.apply(x), x * theta - theta * x);
    }
}

TEST(Derivation, DecomposeRoundTrip) {
    Rng rng(default_seed() + 22);
    for (int m : {2, 3}) {
        const auto alg = algebra(m);
        EXPECT_TRUE(decompose(standard_derivation(alg)).is_zero());
        for (int n = 0; n < 10; ++n) {
            const Elem theta = random_symbol(rng, alg, true);
            const auto d = add_inner(standard_derivation(alg), theta);
            EXPECT_EQ(decompose(d), theta);
        }
    }
}

TEST(Derivation, TraceStability) {
    Rng rng(default_seed() + 23);
    for (int m : {2, 3}) {
        const auto alg = algebra(m);
        for (int n = 0; n < 10; ++n) {
            const auto d = random_valid_derivation(rng, alg);
            const Elem a = random_symbol(rng, alg);
            EXPECT_EQ(d.apply(a).trace(), a.trace().derive());
        }
    }
}

TEST(Constants, InnerOfUIsSpanOfPowers) {
    for (int m : {2, 3, 5}) {
        const auto alg = algebra(m, BaseDerivation::zero);
        const Elem u = Elem::u(alg);
        const auto basis = constants_inner(u);
        ASSERT_EQ(static_cast<int>(basis.size()), m);
        for (const auto& x : basis) EXPECT_TRUE(in_generated_subfield(x, u));
        for (int i = 0; i < m; ++i) EXPECT_TRUE(inner_derivation(u).apply(u.pow(i)).is_zero());
    }
}

TEST(Constants, InnerDimensionAtLeastDegree) {
    Rng rng(default_seed() + 24);
    const auto alg = algebra(2, BaseDerivation::zero);
    for (int n = 0; n < 5; ++n) EXPECT_GE(constants_inner(random_symbol(rng, alg, true)).size(), 2u);
}

TEST(Constants, SquarefreeCoprimeHasNone) {
    for (int m : {2, 3}) EXPECT_FALSE(constants_standard(algebra(m)).new_constants());
}

TEST(Constants, CyclicWitness) {
    const RatFunc t = RatFunc::t(make_ratfunc_field(3));
    const auto alg = make_symbol_algebra(3, t.from_integer(2) * t, t);
    const auto c = constants_standard(alg);
    ASSERT_TRUE(c.new_constants());
    bool found = false;
    for (const auto& w : c.witnesses) {
        EXPECT_TRUE(standard_derivation(alg).apply(w.element).is_zero());
        if (w.i == 1 && w.j == 2) {
            found = true;
            // alpha^-1 beta^-2 = (1/2) t^-3.
            EXPECT_EQ(w.c, t.cyclo_zero().from_rational(Rational(1, 2)));
            EXPECT_EQ(w.lambda, t.inv());
        }
    }
    EXPECT_TRUE(found);
}

TEST(Constants, StableSubfields) {
    const auto alg = algebra(3);
    EXPECT_TRUE(subfield_stable(standard_derivation(alg), Elem::u(alg)));
    EXPECT_TRUE(subfield_stable(standard_derivation(alg), Elem::v(alg)));
    const auto d = add_inner(standard_derivation(alg), Elem::v(alg));
    EXPECT_FALSE(subfield_stable(d, Elem::u(alg)));
}
