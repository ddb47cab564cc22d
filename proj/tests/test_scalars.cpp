#include <gtest/gtest.h>

#include "diffsym/diffsym.hpp"
#include "oracles.hpp"

using namespace diffsym;

namespace {

Cyclo w_of(int m) { return Cyclo::omega_power(make_cyclo_field(m), 1); }

RatFunc t_of(int m, BaseDerivation d = BaseDerivation::ddt) { return RatFunc::t(make_ratfunc_field(m, d)); }

}  // namespace

TEST(Cyclo, CyclotomicReduction) {
    const Cyclo w = w_of(3);
    EXPECT_TRUE((w * w + w + w.one()).is_zero());
    EXPECT_EQ(power(w, 3), w.one());
    const Cyclo i = w_of(4);
    EXPECT_EQ(i * i, -i.one());
    EXPECT_EQ(w_of(2), -w_of(2).one());
}

TEST(Cyclo, OmegaPowersAreDistinctRootsOfUnity) {
    for (int m : {2, 3, 4, 5, 6, 7, 8, 12}) {
        const auto f = make_cyclo_field(m);
        for (int k = 1; k < m; ++k) EXPECT_NE(Cyclo::omega_power(f, k), Cyclo::rational(f, 1)) << m << " " << k;
        EXPECT_EQ(Cyclo::omega_power(f, m), Cyclo::rational(f, 1));
        EXPECT_EQ(Cyclo::omega_power(f, -1) * Cyclo::omega_power(f, 1), Cyclo::rational(f, 1));
    }
}

TEST(Cyclo, FieldAxiomsOnRandomElements) {
    Rng rng(default_seed());
    for (int m : {3, 5, 8}) {
        const Cyclo z = w_of(m).zero();
        for (int n = 0; n < 40; ++n) {
            const Cyclo a = random_cyclo(rng, z), b = random_cyclo(rng, z), c = random_cyclo(rng, z);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a * b, b * a);
            if (!a.is_zero()) {
                EXPECT_EQ(a * a.inv(), z.one());
            }
        }
    }
}

TEST(Cyclo, InverseOfZeroThrows) { EXPECT_THROW(w_of(3).zero().inv(), DivisionByZero); }

TEST(RatFunc, NormalFormCancelsCommonFactors) {
    const RatFunc t = t_of(2);
    const RatFunc one = t.one();
    EXPECT_EQ((t * t - one) / (t - one), t + one);
    EXPECT_TRUE(((t + one) / (t + one)).is_constant_element());
    EXPECT_EQ((t / (t * t)).str(), "(1)/(t)");
}

TEST(RatFunc, DerivativeOracles) {
    const RatFunc t = t_of(3);
    const RatFunc one = t.one();
    EXPECT_EQ(power(t, 5).derive(), t.from_integer(5) * power(t, 4));
    EXPECT_EQ(t.inv().derive(), -power(t, -2));
    EXPECT_TRUE(t.embed_base(w_of(3)).derive().is_zero());
    EXPECT_EQ(((t + one) / (t - one)).derive(), t.from_integer(-2) / power(t - one, 2));
    EXPECT_TRUE(t_of(3, BaseDerivation::zero).derive().is_zero());
}

TEST(RatFunc, LeibnizAndQuotientRuleOnRandomElements) {
    Rng rng(default_seed() + 1);
    const RatFunc like = t_of(3);
    for (int n = 0; n < 100; ++n) {
        const RatFunc a = random_ratfunc(rng, like), b = random_ratfunc(rng, like);
        EXPECT_EQ((a * b).derive(), a.derive() * b + a * b.derive());
        EXPECT_EQ((a + b).derive(), a.derive() + b.derive());
        if (!b.is_zero()) {
            EXPECT_EQ((a / b).derive(), (a.derive() * b - a * b.derive()) / (b * b));
        }
    }
}

TEST(Poly, SquarefreeDecompositionRecomposes) {
    const RatFunc t = t_of(2);
    const Cyclo one = t.cyclo_zero().one();
    const CycloPoly x = CycloPoly::x(one);
    const CycloPoly p = (x - CycloPoly::constant(one)).pow(3) * (x + CycloPoly::constant(one)).pow(2) * x;
    const auto parts = squarefree_decompose(p);
    CycloPoly back = CycloPoly::constant(one);
    for (const auto& [q, j] : parts) back = back * q.pow(j);
    EXPECT_EQ(back.monic(), p.monic());
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].second, 1);
    EXPECT_EQ(parts[1].second, 2);
    EXPECT_EQ(parts[2].second, 3);
}

TEST(PowerDetection, MultiplicityOracle) {
    const RatFunc t = t_of(3);
    const RatFunc one = t.one();
    EXPECT_FALSE(mth_power_up_to_constant(power(t, 2) * power(t + one, 3), 3));
    const auto pd = mth_power_up_to_constant(t.from_integer(5) * power(t, 3) / power(t + one, 6), 3);
    ASSERT_TRUE(pd);
    EXPECT_EQ(pd->c, t.cyclo_zero().from_integer(5));
    EXPECT_EQ(pd->h, t / power(t + one, 2));
    EXPECT_EQ(t.embed_base(pd->c) * power(pd->h, 3), t.from_integer(5) * power(t, 3) / power(t + one, 6));
    EXPECT_THROW(mth_power_up_to_constant(t.zero(), 3), PreconditionError);
}

TEST(PowerDetection, RandomPowersAreRecognised) {
    Rng rng(default_seed() + 2);
    const RatFunc like = t_of(2);
    for (int n = 0; n < 50; ++n) {
        RatFunc h = random_ratfunc(rng, like);
        if (h.is_zero()) continue;
        const RatFunc c = like.embed_base(random_cyclo(rng, like.cyclo_zero()));
        if (c.is_zero()) continue;
        const auto pd = mth_power_up_to_constant(c * power(h, 2), 2);
        ASSERT_TRUE(pd);
        EXPECT_EQ(like.embed_base(pd->c) * power(pd->h, 2), c * power(h, 2));
    }
}

TEST(ConstantPowers, RationalAndCyclotomic) {
    const auto f3 = make_cyclo_field(3);
    EXPECT_TRUE(constant_is_power(Cyclo::rational(f3, 8), 3));
    EXPECT_FALSE(constant_is_power(Cyclo::rational(f3, 2), 3));
    // w = (w^2)^2 in Q(w_3).
    EXPECT_TRUE(constant_is_power(Cyclo::omega_power(f3, 1), 2));
    // -3 = (1 + 2w)^2.
    EXPECT_TRUE(constant_is_power(Cyclo::rational(f3, -3), 2));
    const auto f2 = make_cyclo_field(2);
    EXPECT_FALSE(constant_is_power(Cyclo::rational(f2, -1), 2));
    EXPECT_TRUE(constant_is_power(Cyclo::rational(f2, Rational(9, 4)), 2));
}

TEST(KummerIrreducibility, Classification) {
    const RatFunc t = t_of(4);
    const RatFunc one = t.one();
    EXPECT_TRUE(kummer_irreducible(t, 4));
    EXPECT_FALSE(kummer_irreducible(power(t, 2), 4));
    EXPECT_TRUE(kummer_irreducible(t * power(t + one, 2), 4));
    EXPECT_FALSE(kummer_irreducible(t.from_integer(16), 4));
    EXPECT_THROW(kummer_extend(power(t, 2), 2), ReducibleRadicand);
}

TEST(Kummer, GeneratorArithmeticAndDerivation) {
    const RatFunc t = t_of(3);
    const auto xf = kummer_extend(t, 3);
    const KummerRat xi = KummerRat::generator(xf);
    EXPECT_EQ(power(xi, 3), xi.embed_base(t));
    EXPECT_EQ(xi * xi.inv(), xi.one());
    // xi' = xi / (3t).
    EXPECT_EQ(xi.derive(), xi * xi.embed_base((t * t.from_integer(3)).inv()));
    EXPECT_EQ(xi.norm(), t);
    EXPECT_EQ(xi.conjugate(1), xi * xi.embed_base(t.embed_base(Cyclo::omega_power(t.field()->cyclo(), 1))));
}

TEST(Kummer, FieldAxiomsAndLeibniz) {
    Rng rng(default_seed() + 3);
    const RatFunc t = t_of(2);
    const auto xf = kummer_extend(t + t.one(), 2);
    const KummerRat like(xf);
    auto rnd = [&] {
        KummerRat x = like.zero();
        for (int i = 0; i < 2; ++i) x = x + like.embed_base(random_ratfunc(rng, t, 1)) * power(KummerRat::generator(xf), i);
        return x;
    };
    for (int n = 0; n < 30; ++n) {
        const KummerRat a = rnd(), b = rnd();
        EXPECT_EQ((a * b).derive(), a.derive() * b + a * b.derive());
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), like.one());
        }
    }
}

TEST(RadicalTower, DegreeCertification) {
    const RatFunc t = t_of(3);
    const auto tower = radical_tower(t, 3, t + t.one(), 3);
    ASSERT_TRUE(tower.degree);
    EXPECT_EQ(*tower.degree, 9);
    const auto same = radical_tower(t, 3, t, 3);
    EXPECT_FALSE(same.degree);
    EXPECT_EQ(same.degree_bound, 9);
}

TEST(Ode, ClosedFormExamples) {
    const RatFunc t = t_of(2);
    const Cyclo z = t.cyclo_zero();
    // x' = 1/t^2: x = -1/t + C.
    auto s = rational_ode_solve(z, power(t, -2));
    ASSERT_TRUE(s.solvable());
    EXPECT_EQ(s.particular->derive(), power(t, -2));
    ASSERT_EQ(s.homogeneous.size(), 1u);
    EXPECT_TRUE(s.homogeneous[0].is_constant_element());
    // x' = 1/t has no rational solution.
    EXPECT_FALSE(rational_ode_solve(z, t.inv()).solvable());
    // x' + x = 1/t: none either.
    EXPECT_FALSE(rational_ode_solve(z.one(), t.inv()).solvable());
    // x' + 2x = 2t + 1: x = t.
    s = rational_ode_solve(z.from_integer(2), t.from_integer(2) * t + t.one());
    ASSERT_TRUE(s.solvable());
    EXPECT_EQ(*s.particular, t);
    EXPECT_TRUE(s.homogeneous.empty());
}

TEST(Ode, AgreesWithBruteForceOracle) {
    Rng rng(default_seed() + 4);
    const RatFunc like = t_of(3);
    const Cyclo z = like.cyclo_zero();
    for (int n = 0; n < 50; ++n) {
        const Cyclo mu = random_int(rng, 0, 1) ? z : random_cyclo(rng, z, 2);
        RatFunc g;
        if (n % 2 == 0) {
            RatFunc x = random_ratfunc(rng, like, 2);
            g = x.derive() + x.scaled(mu);
        } else {
            g = random_ratfunc(rng, like, 2);
        }
        if (g.is_zero() || g.den().degree() > 4) continue;
        const auto lib = rational_ode_solve(mu, g);
        const auto ref = oracle::ode_bruteforce(mu, g);
        ASSERT_EQ(lib.solvable(), ref.particular.has_value()) << g.str() << " mu = " << mu.str();
        EXPECT_EQ(lib.homogeneous.size(), ref.homogeneous_dim);
        if (lib.solvable()) {
            EXPECT_EQ(lib.particular->derive() + lib.particular->scaled(mu), g);
            const RatFunc diff = *lib.particular - *ref.particular;
            EXPECT_TRUE(diff.is_zero() || (!lib.homogeneous.empty() && diff.is_constant_element()));
        }
    }
}
