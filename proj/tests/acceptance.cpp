// Acceptance gate: one PASS/FAIL line per criterion.
//
// Usage: acceptance [path-to-diffsym-cli]
//
// Every comparison is exact; there is no floating point tolerance anywhere.
// Inputs are seeded from default_seed() (DIFFSYM_SEED overrides it).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "diffsym/diffsym.hpp"
#include "oracles.hpp"

using namespace diffsym;

namespace {

using Elem = SymbolElem<RatFunc>;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        if (pass) detail << what;
        pass = false;
    }
};

SymbolAlgebraPtr<RatFunc> algebra(int m, BaseDerivation d = BaseDerivation::ddt) {
    const RatFunc t = RatFunc::t(make_ratfunc_field(m, d));
    return make_symbol_algebra(m, t, t + t.one());
}

std::string cli_path;

void criterion_1(Outcome& o) {
    for (int m : {2, 3, 4, 5, 7}) {
        const auto t = t_identity(m);
        o.require(t.holds, "identity fails at m=" + std::to_string(m));
        for (int r = 0; r < m; ++r) {
            Rational want(m - 1 - 2 * r, 2);
            want.canonicalize();
            o.require(t.from_sum[static_cast<std::size_t>(r)] == want,
                      "m=" + std::to_string(m) + " r=" + std::to_string(r));
        }
    }
    o.detail << "m in {2,3,4,5,7}, all r";
}

void criterion_2(Outcome& o) {
    for (int m : {2, 3, 5}) {
        const auto alg = algebra(m);
        const PhiMap phi = phi_build(alg);
        const KummerRat z = phi.scalar_zero();
        const auto id = Matrix<KummerRat>::identity(static_cast<std::size_t>(m), z);
        const std::string at = " at m=" + std::to_string(m);
        o.require(phi.A.pow(m) == id.scaled(embed(z, alg->alpha())), "A^m != alpha I" + at);
        o.require(phi.B.pow(m) == id.scaled(embed(z, alg->beta())), "B^m != beta I" + at);
        o.require(phi.B * phi.A == (phi.A * phi.B).scaled(embed(z, alg->omega())), "BA != wAB" + at);
    }
    o.detail << "m in {2,3,5}";
}

void criterion_3(Outcome& o) {
    {
        const auto alg = algebra(3);
        o.require(standard_derivation(alg).validate().ok, "standard data rejected");
        struct Case {
            bool in_a;
            int i, j;
            const char* tag;
        };
        for (const Case& c : {Case{true, 1, 0, "A"}, Case{false, 0, 1, "B"}, Case{true, 0, 2, "REL1"},
                              Case{false, 2, 2, "REL2"}, Case{true, 2, 2, "REL3"}, Case{false, 1, 2, "REL4"}}) {
            auto data = standard_derivation(alg).data();
            auto& slot = c.in_a ? data.a_at(c.i, c.j) : data.b_at(c.i, c.j);
            slot = slot + slot.one();
            const auto v = validate(*alg, data);
            o.require(!v.ok && v.failing == std::vector<std::string>{c.tag}, std::string("perturbation not tagged ") + c.tag);
        }
    }
    Rng rng(default_seed() + 1003);
    int pairs = 0;
    for (int m : {2, 3}) {
        const auto alg = algebra(m);
        const auto ds = standard_derivation(alg);
        for (int n = 0; n < 50; ++n) {
            const auto d = random_valid_derivation(rng, alg);
            o.require(d.validate().ok, "random derivation rejected");
            for (int k = 0; k < 100; ++k, ++pairs) {
                const Elem a = random_sparse_symbol(rng, alg), b = random_sparse_symbol(rng, alg);
                o.require(d.apply(a * b) == d.apply(a) * b + a * d.apply(b), "Leibniz fails at m=" + std::to_string(m));
            }
            const Elem theta = random_symbol(rng, alg, true);
            o.require(decompose(add_inner(ds, theta)) == theta, "decompose(d_s + ad theta) != theta");
            o.require(add_inner(ds, decompose(d)).data() == d.data(), "d != d_s + ad decompose(d)");
        }
    }
    o.detail << "6 perturbations, 100 derivations, " << pairs << " Leibniz pairs";
}

void criterion_4(Outcome& o) {
    Rng rng(default_seed() + 1004);
    for (int m : {2, 3}) {
        const auto alg = algebra(m);
        for (int n = 0; n < 50; ++n) {
            const auto d = random_valid_derivation(rng, alg);
            const Elem a = random_symbol(rng, alg);
            o.require(d.apply(a).trace() == a.trace().derive(), "trace not stable at m=" + std::to_string(m));
        }
    }
    o.detail << "100 (d, a) pairs";
}

void criterion_5(Outcome& o) {
    for (int m : {2, 3, 5}) {
        const auto alg = algebra(m, BaseDerivation::zero);
        const Elem u = Elem::u(alg);
        const auto basis = constants_inner(u);
        o.require(static_cast<int>(basis.size()) == m, "dim C != m at m=" + std::to_string(m));
        for (const auto& x : basis) o.require(in_generated_subfield(x, u), "constant outside k(u)");
        for (int i = 0; i < m; ++i) o.require(inner_derivation(u).apply(u.pow(i)).is_zero(), "u^i not constant");
    }
    Rng rng(default_seed() + 1005);
    std::size_t smallest = 100;
    for (int n = 0; n < 20; ++n) {
        const int m = n % 2 ? 3 : 2;
        const auto dim = constants_inner(random_symbol(rng, algebra(m, BaseDerivation::zero), true)).size();
        o.require(dim >= static_cast<std::size_t>(m), "dim C < m for a random theta");
        smallest = std::min(smallest, dim - static_cast<std::size_t>(m));
    }
    o.detail << "u at m in {2,3,5}; 20 random theta, min dim - m = " << smallest;
}

void criterion_6(Outcome& o) {
    for (int m : {2, 3, 4}) {
        const RatFunc t = RatFunc::t(make_ratfunc_field(m));
        std::vector<Cyclo> lambdas;
        for (int i = 1; i <= m; ++i) lambdas.push_back(t.cyclo_zero().from_integer(i));
        const auto p = corner_matrix(lambdas, t.inv());
        const auto basis = corner_constants(p);
        o.require(static_cast<int>(basis.size()) == m - 1, "dim != m-1 at m=" + std::to_string(m));
        for (const auto& x : basis) {
            o.require(apply_dP(p, x).is_zero(), "basis element is not a constant");
            for (std::size_t r = 0; r < x.rows(); ++r)
                for (std::size_t c = 0; c < x.cols(); ++c) {
                    if (r != c) o.require(x(r, c).is_zero(), "off-diagonal entry");
                    else o.require(x(r, r).is_constant_element(), "non-constant diagonal entry");
                }
            o.require(x(0, 0) == x(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(m - 1)), "corner entries differ");
        }
        if (m == 2) o.require(basis.size() == 1 && basis[0] == Matrix<RatFunc>::identity(2, t.zero()), "m=2 space is not C");
    }
    o.detail << "f = 1/t, m in {2,3,4}";
}

void criterion_7(Outcome& o) {
    for (int m : {2, 3}) o.require(!constants_standard(algebra(m)).new_constants(), "coprime pair has new constants");
    const RatFunc t = RatFunc::t(make_ratfunc_field(3));
    const auto alg = make_symbol_algebra(3, t.from_integer(2) * t, t);
    const auto c = constants_standard(alg);
    bool found = false;
    for (const auto& w : c.witnesses) {
        o.require(standard_derivation(alg).apply(w.element).is_zero(), "witness is not a constant");
        if (w.i == 1 && w.j == 2) found = true;
    }
    o.require(c.new_constants() && found, "(1, 2) witness missing");
    o.detail << "(t, t+1) none; (2t, t) witness (1, 2)";
}

void criterion_8(Outcome& o) {
    for (int m : {2, 3, 4}) {
        const auto r = split_standard(algebra(m));
        const std::string at = " at m=" + std::to_string(m);
        o.require(r.report.gauge.ok, "gauge" + at);
        o.require(r.report.isomorphism && r.report.isomorphism->ok, "isomorphism" + at);
        o.require(r.report.degree && *r.report.degree == (m % 2 ? m * m : 2 * m * m), "degree" + at);
        if (r.report.degree) o.detail << "m=" << m << ": [E:k]=" << *r.report.degree << " ";
    }
}

void criterion_9(Outcome& o) {
    for (int m : {2, 3}) {
        const auto r = split_inner_cyclic(Elem::u(algebra(m, BaseDerivation::zero)));
        o.require(r.report.ok(), "cyclic construction at m=" + std::to_string(m));
        o.require(r.report.transcendence_degree == m, "transcendence degree != m");
    }
    for (int m : {2, 4}) {
        const auto alg = algebra(m, BaseDerivation::zero);
        const Elem u = Elem::u(alg);
        const auto r = split_inner_even_half(u);
        o.require(r.report.ok(), "half construction at m=" + std::to_string(m));
        o.require(r.report.transcendence_degree == m / 2, "transcendence degree != m/2");
        const auto pu = phi_apply(phi_build(alg), u);
        for (std::size_t i = 0; i < r.P.rows(); ++i)
            for (std::size_t j = 0; j < r.P.cols(); ++j) o.require(r.P(i, j).str() == pu(i, j).str(), "P != Phi(u (x) 1)");
    }
    o.detail << "cyclic m in {2,3}; half m in {2,4}";
}

void criterion_10(Outcome& o) {
    Rng rng(default_seed() + 1010);
    const auto d = random_valid_derivation(rng, algebra(2));
    const auto r = split_generic(d);
    o.require(r.report.ok(), "report fails verification");
    o.require(!matrix_determinant(r.F).is_zero(), "det X = 0");
    o.detail << "m=2, transcendence degree " << r.report.transcendence_degree.value_or(-1);
}

void criterion_11(Outcome& o) {
    Rng rng(default_seed() + 1011);
    int runs = 0, agree = 0, confined = 0;
    for (int m : {2, 3}) {
        const auto alg = algebra(m);
        const PhiMap phi = phi_build(alg);
        for (int n = 0; n < 20; ++n, ++runs) {
            const auto d = random_valid_derivation(rng, alg);
            const auto g = compute_P(d, phi);
            o.require(verify_diff_isomorphism(phi, d, g.P).ok, "constructive P fails the isomorphism check");
            if (g.check.agrees()) ++agree;
            else if (g.check.confined_to_range()) ++confined;
        }
    }
    o.detail << runs << " derivations: table agrees " << agree << ", range-only " << confined << ", other "
             << runs - agree - confined << "; isomorphism verdict decides";
}

void criterion_12(Outcome& o) {
    const auto alg = algebra(3);
    const RatFunc t = alg->alpha(), g = alg->beta();
    int refuted = 0, cli_ones = 0, combos = 0;
    for (long lambda : {1L, 2L})
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) {
                if (a == 0 && b == 0) continue;
                ++combos;
                const RatFunc nu = t.from_integer(lambda) * power(t, a) * power(g, b);
                if (maximal_subfield_necessary(alg, nu).refuted) ++refuted;
                if (cli_path.empty()) continue;
                const std::string cmd = "\"" + cli_path + "\" split maximal --m 3 --alpha t --beta 't+1' --nu '" + nu.str() +
                                        "' >/dev/null 2>&1";
                const int status = std::system(cmd.c_str());
                if (status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 1) ++cli_ones;
            }
    o.require(refuted == combos, "a candidate was not refuted");
    if (cli_path.empty()) o.require(false, "no CLI path given");
    else o.require(cli_ones == combos, "CLI exit code was not 1 for every candidate");
    o.detail << refuted << "/" << combos << " refuted, CLI exit 1 on " << cli_ones << "/" << combos;
}

void criterion_13(Outcome& o) {
    Rng rng(default_seed() + 1013);
    const RatFunc like = RatFunc::t(make_ratfunc_field(3));
    const Cyclo z = like.cyclo_zero();
    int instances = 0, solvable = 0;
    while (instances < 50) {
        const Cyclo mu = random_int(rng, 0, 1) ? z : random_cyclo(rng, z, 2);
        RatFunc g;
        if (instances % 2 == 0) {
            const RatFunc x = random_ratfunc(rng, like, 2);
            g = x.derive() + x.scaled(mu);
        } else {
            g = random_ratfunc(rng, like, 2);
        }
        if (g.is_zero() || g.den().degree() > 4) continue;
        ++instances;
        const auto lib = rational_ode_solve(mu, g);
        const auto ref = oracle::ode_bruteforce(mu, g, 8);
        o.require(lib.solvable() == ref.particular.has_value(), "solvability differs for g = " + g.str());
        o.require(lib.homogeneous.size() == ref.homogeneous_dim, "homogeneous dimension differs");
        if (!lib.solvable() || !ref.particular) continue;
        ++solvable;
        o.require(lib.particular->derive() + lib.particular->scaled(mu) == g, "particular solution is wrong");
        const RatFunc diff = *lib.particular - *ref.particular;
        o.require(diff.is_zero() || (!lib.homogeneous.empty() && diff.is_constant_element()), "particular solutions differ");
    }
    o.detail << instances << " instances, " << solvable << " solvable";
}

void criterion_14(Outcome& o) {
    const auto alg = algebra(2);
    const RatFunc a = alg->alpha(), b = alg->beta();
    const auto ds = standard_derivation(alg);
    const RatFunc two = a.from_integer(2);
    o.require(ds.du() == Elem::u(alg).scaled(a.derive() * (two * a).inv()), "d_s(u) != a'/(2a) u");
    o.require(ds.dv() == Elem::v(alg).scaled(b.derive() * (two * b).inv()), "d_s(v) != b'/(2b) v");
    o.require(decompose(ds).is_zero(), "decompose(d_s) != 0");
    Rng rng(default_seed() + 1014);
    for (int n = 0; n < 10; ++n) {
        const Elem theta = random_symbol(rng, alg, true);
        const Elem back = decompose(add_inner(ds, theta));
        o.require(back == theta && back.trace().is_zero(), "decomposition is not the unique trace-zero theta");
    }
    const auto r = split_standard(alg);
    o.require(r.report.ok() && r.report.degree == 8, "split_standard at m=2");
    const Kummer2 zeta = Kummer2::generator(r.F(0, 0).field());
    o.require(r.F(0, 0) == zeta && r.F(1, 1) == zeta.inv(), "F != diag(zeta, 1/zeta)");
    o.require(r.F(0, 1).is_zero() && r.F(1, 0).is_zero(), "F is not diagonal");
    o.require(power(zeta, 4) == embed(zeta, b), "zeta^4 != beta");
    const RatFunc q = b.derive() * (b.from_integer(4) * b).inv();
    o.require(r.P(0, 0) == embed(zeta, q) && r.P(1, 1) == embed(zeta, -q), "P_s != b'/(4b) diag(1, -1)");
    o.require(r.P(0, 1).is_zero() && r.P(1, 0).is_zero(), "P_s is not diagonal");
    o.detail << "d_s, decomposition, split_standard at alpha = t, beta = t+1";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"t_r identity", criterion_1},
        {"Phi relations", criterion_2},
        {"derivation characterization", criterion_3},
        {"trace stability", criterion_4},
        {"constants of inner derivations", criterion_5},
        {"corner matrix constants", criterion_6},
        {"constants of the standard derivation", criterion_7},
        {"standard splitting field", criterion_8},
        {"inner splitting fields", criterion_9},
        {"generic splitting", criterion_10},
        {"constructive P vs closed-form table", criterion_11},
        {"maximal subfield refutation", criterion_12},
        {"ODE solver vs oracle", criterion_13},
        {"quaternion regression", criterion_14},
    };
    std::cout << "seed " << default_seed() << "\n";
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail.str("");
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("criterion %2zu: %s  %s (%s) [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.str().c_str(), secs);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
