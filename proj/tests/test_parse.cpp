#include <gtest/gtest.h>

#include "diffsym/diffsym.hpp"

using namespace diffsym;

namespace {

RatFunc t_of(int m) { return RatFunc::t(make_ratfunc_field(m)); }

KummerRat random_kummer(Rng& rng, const KummerRatFieldPtr& f) {
    std::vector<RatFunc> c;
    for (int i = 0; i < f->degree(); ++i)
        c.push_back(random_int(rng, 0, 1) ? random_ratfunc(rng, f->base_zero(), 1) : f->base_zero().zero());
    return KummerRat(f, c);
}

template <class E>
void expect_round_trip(const E& x, const E& like) {
    const std::string s = x.str();
    EXPECT_EQ(parse_scalar(s, like), x) << s;
}

}  // namespace

TEST(Parse, RationalFunctionExamples) {
    const RatFunc t = t_of(3);
    const RatFunc x = parse_scalar("t^2/(t-1)", t);
    EXPECT_EQ(x * (t - t.one()), t * t);
    EXPECT_TRUE(parse_scalar("w^2+w+1", t).is_zero());
    EXPECT_EQ(parse_scalar("-t^-2", t), -power(t, -2));
    EXPECT_EQ(parse_scalar("(1/2)*t + 3", t), t.from_rational(Rational(1, 2)) * t + t.from_integer(3));
    EXPECT_EQ(parse_scalar(" 2 * w * t ", t), t.embed_base(t.cyclo_zero().omega()).scaled(t.cyclo_zero().from_integer(2)) * t);
}

TEST(Parse, KummerExamples) {
    const RatFunc t = t_of(2);
    const auto xf = kummer_extend(t, 2);
    const KummerRat xi = KummerRat::generator(xf);
    const KummerRat y = parse_scalar("xi/t", KummerRat(xf));
    EXPECT_EQ(y * embed(xi, t), xi);
    EXPECT_EQ(parse_scalar("xi^2", xi), embed(xi, t));
    EXPECT_EQ(parse_scalar("xi^-1", xi) * xi, xi.one());
}

TEST(Parse, ErrorsCarryPosition) {
    const RatFunc t = t_of(2);
    try {
        (void)parse_scalar("t + q", t);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
        EXPECT_NE(std::string(e.what()).find("undefined symbol"), std::string::npos);
    }
    try {
        (void)parse_scalar("(t+1", t);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    EXPECT_THROW(parse_scalar("t/0", t), ParseError);
    EXPECT_THROW(parse_scalar("t^", t), ParseError);
    EXPECT_THROW(parse_scalar("t $ 1", t), ParseError);
    EXPECT_THROW(parse_scalar("xi", t), ParseError);
    EXPECT_THROW(parse_scalar("t", t.cyclo_zero()), ParseError);
}

TEST(Parse, CycloRoundTrip) {
    Rng rng(default_seed() + 50);
    for (int m : {2, 3, 5}) {
        const Cyclo z(make_cyclo_field(m));
        for (int n = 0; n < 100; ++n) expect_round_trip(random_cyclo(rng, z), z);
    }
}

TEST(Parse, RatFuncRoundTrip) {
    Rng rng(default_seed() + 51);
    for (int m : {2, 3}) {
        const RatFunc t = t_of(m);
        for (int n = 0; n < 100; ++n) expect_round_trip(random_ratfunc(rng, t, 3), t);
    }
}

TEST(Parse, KummerRoundTrip) {
    Rng rng(default_seed() + 52);
    const RatFunc t = t_of(3);
    const auto xf = kummer_extend(t, 3);
    const KummerRat like(xf);
    for (int n = 0; n < 100; ++n) expect_round_trip(random_kummer(rng, xf), like);
}

TEST(Parse, TowerRoundTrip) {
    Rng rng(default_seed() + 53);
    const RatFunc t = t_of(2);
    const auto tower = radical_tower(t, 2, t + t.one(), 2);
    const Kummer2 like(tower.second);
    for (int n = 0; n < 100; ++n) {
        std::vector<KummerRat> c;
        for (int i = 0; i < 2; ++i) c.push_back(random_kummer(rng, tower.first));
        expect_round_trip(Kummer2(tower.second, c), like);
    }
}

TEST(Parse, LaurentRoundTrip) {
    Rng rng(default_seed() + 54);
    const RatFunc t = t_of(2);
    const auto ring = std::make_shared<const MPolyRing<RatFunc>>(t, std::vector<std::string>{"y0", "y1"},
                                                                  std::vector<TermMap<RatFunc>>(2));
    const MPoly<RatFunc> like(ring);
    for (int n = 0; n < 100; ++n) {
        TermMap<RatFunc> terms;
        for (int k = 0; k < 3; ++k)
            terms[{static_cast<int>(random_int(rng, -2, 2)), static_cast<int>(random_int(rng, -2, 2))}] =
                random_ratfunc(rng, t, 1);
        expect_round_trip(MPoly<RatFunc>(ring, terms), like);
    }
}

TEST(Json, ScalarAndSymbolRoundTrip) {
    Rng rng(default_seed() + 55);
    const RatFunc t = t_of(3);
    const auto alg = make_symbol_algebra(3, t, t + t.one());
    for (int n = 0; n < 20; ++n) {
        const RatFunc x = random_ratfunc(rng, t, 2);
        const Json j = scalar_json(x);
        EXPECT_EQ(scalar_from_json(Json::parse(j.dump()), t), x);
        const auto s = random_symbol(rng, alg);
        EXPECT_EQ(symbol_from_json(Json::parse(symbol_json(s).dump()), alg), s);
    }
    EXPECT_EQ(scalar_from_json(Json("t+1"), t), t + t.one());
    EXPECT_EQ(scalar_from_json(Json(4), t), t.from_integer(4));
    EXPECT_THROW(scalar_from_json(Json::array(), t), PreconditionError);
}

TEST(Json, DerivationDataRoundTrip) {
    Rng rng(default_seed() + 56);
    const RatFunc t = t_of(2);
    const auto alg = make_symbol_algebra(2, t, t + t.one());
    const auto d = random_valid_derivation(rng, alg);
    const auto back = derivation_data_from_json(Json::parse(derivation_data_json(d.data()).dump()), alg);
    EXPECT_TRUE(validate(*alg, back).ok);
    EXPECT_EQ(derivation_data_json(back), derivation_data_json(d.data()));
    EXPECT_THROW(symbol_from_json(Json{{"entries", {{0, 5, "1"}}}}, alg), PreconditionError);
    EXPECT_THROW(symbol_from_json(Json{{"m", 3}, {"entries", Json::array()}}, alg), PreconditionError);
}
