#include <gtest/gtest.h>

#include "diffsym/diffsym.hpp"

using namespace diffsym;

namespace {

RatFunc t_of(int m) { return RatFunc::t(make_ratfunc_field(m)); }

std::vector<Cyclo> one_to(int m, const RatFunc& like) {
    std::vector<Cyclo> out;
    for (int i = 1; i <= m; ++i) out.push_back(like.cyclo_zero().from_integer(i));
    return out;
}

}  // namespace

TEST(MatrixDerivation, DeltaCIsEntrywise) {
    const RatFunc t = t_of(2);
    Matrix<RatFunc> x(2, 2, t.zero());
    x(0, 0) = t * t;
    x(1, 0) = t.inv();
    const auto dx = delta_c(x);
    EXPECT_EQ(dx(0, 0), t.from_integer(2) * t);
    EXPECT_EQ(dx(1, 0), -power(t, -2));
    EXPECT_TRUE(dx(0, 1).is_zero());
}

TEST(MatrixDerivation, DPIsADerivation) {
    Rng rng(default_seed() + 30);
    const RatFunc t = t_of(2);
    auto rnd = [&] {
        Matrix<RatFunc> x(2, 2, t.zero());
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) x(r, c) = random_ratfunc(rng, t, 1);
        return x;
    };
    for (int n = 0; n < 10; ++n) {
        const auto p = rnd(), x = rnd(), y = rnd();
        EXPECT_EQ(apply_dP(p, x * y), apply_dP(p, x) * y + x * apply_dP(p, y));
        // d_P(X) = X' + XP - PX.
        EXPECT_EQ(apply_dP(p, x), delta_c(x) + x * p - p * x);
    }
}

TEST(MatrixDerivation, GaugeVerdicts) {
    const RatFunc t = t_of(2);
    // F = diag(t, 1): F^-1 F' = diag(1/t, 0).
    const auto f = Matrix<RatFunc>::diagonal({t, t.one()});
    const auto good = Matrix<RatFunc>::diagonal({t.inv(), t.zero()});
    EXPECT_TRUE(verify_gauge(good, f).ok);
    const auto bad = Matrix<RatFunc>::diagonal({t.inv(), t.one()});
    const auto v = verify_gauge(bad, f);
    EXPECT_FALSE(v.ok);
    ASSERT_TRUE(v.failing_entry);
    EXPECT_EQ(*v.failing_entry, std::make_pair(std::size_t{1}, std::size_t{1}));
    const auto singular = Matrix<RatFunc>::diagonal({t, t.zero()});
    EXPECT_FALSE(verify_gauge(good, singular).ok);
}

TEST(MatrixDerivation, CompareMatricesReportsFirstDifference) {
    const RatFunc t = t_of(2);
    const auto a = Matrix<RatFunc>::identity(2, t.zero());
    auto b = a;
    b(1, 0) = t;
    const auto v = compare_matrices(a, b);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.rhs, "t");
    EXPECT_TRUE(compare_matrices(a, a).ok);
}

TEST(MatrixDerivation, DeterminantExpandMatchesElimination) {
    Rng rng(default_seed() + 31);
    const RatFunc t = t_of(3);
    for (int n = 0; n < 5; ++n) {
        Matrix<RatFunc> x(3, 3, t.zero());
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) x(r, c) = random_ratfunc(rng, t, 1);
        EXPECT_EQ(determinant(x), determinant_expand(x));
    }
}

TEST(CornerMatrix, ReciprocalCornerHasDimensionMMinusOne) {
    for (int m : {2, 3, 4}) {
        const RatFunc t = t_of(m);
        const auto p = corner_matrix(one_to(m, t), t.inv());
        const auto basis = corner_constants(p);
        ASSERT_EQ(static_cast<int>(basis.size()), m - 1) << m;
        for (const auto& x : basis) {
            EXPECT_TRUE(apply_dP(p, x).is_zero());
            for (std::size_t r = 0; r < x.rows(); ++r)
                for (std::size_t c = 0; c < x.cols(); ++c) {
                    if (r != c) {
                        EXPECT_TRUE(x(r, c).is_zero());
                    }
                }
            for (std::size_t r = 0; r < x.rows(); ++r) EXPECT_TRUE(x(r, r).is_constant_element());
            EXPECT_EQ(x(0, 0), x(m - 1, m - 1));
        }
    }
}

TEST(CornerMatrix, DegreeTwoReciprocalGivesScalars) {
    const RatFunc t = t_of(2);
    const auto basis = corner_constants(corner_matrix(one_to(2, t), t.inv()));
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(basis[0], Matrix<RatFunc>::identity(2, t.zero()));
}

TEST(CornerMatrix, PolynomialCornerGivesFullDimension) {
    const RatFunc t = t_of(3);
    const auto p = corner_matrix(one_to(3, t), t);
    const auto basis = corner_constants(p);
    ASSERT_EQ(basis.size(), 3u);
    for (const auto& x : basis) EXPECT_TRUE(apply_dP(p, x).is_zero());
    EXPECT_FALSE(basis.front()(0, 2).is_zero());
}

TEST(CornerMatrix, ShapeValidation) {
    const RatFunc t = t_of(2);
    EXPECT_THROW(corner_matrix({t.cyclo_zero().one(), t.cyclo_zero().one()}, t), PreconditionError);
    auto p = corner_matrix(one_to(2, t), t);
    p(1, 0) = t;
    EXPECT_THROW(corner_constants(p), PreconditionError);
}

TEST(CornerMatrix, CandidateSubfieldIsRefuted) {
    const RatFunc t = t_of(2);
    const auto p = corner_matrix(one_to(2, t), t.inv());
    // X = [[0, 1], [t, 0]], X^2 = t I.
    Matrix<RatFunc> x(2, 2, t.zero());
    x(0, 1) = t.one();
    x(1, 0) = t;
    const auto rep = no_cyclic_subfield_witness(p, x, t);
    EXPECT_TRUE(rep.hypotheses_hold);
    EXPECT_TRUE(rep.refuted);
    EXPECT_FALSE(rep.contradiction.empty());
}
