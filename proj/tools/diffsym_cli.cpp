// diffsym: command-line front end for the differential symbol algebra library.

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffsym/diffsym.hpp"

using namespace diffsym;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct Inputs {
    int m = 0;
    std::string alpha = "t";
    std::string beta = "t+1";
    std::string f, mu, g, nu;
    std::string theta, rho, rho1, data;
    std::string lambdas;
    bool standard = false;
    bool zero_derivation = false;
    bool half = false;
    bool inject_fault = false;
    bool json = false;
    std::optional<std::uint64_t> seed;
};

struct Outcome {
    Json result = Json::object();
    std::string text;
    int code = exit_pass;
};

Json echo_inputs(const Inputs& in) {
    Json j = Json::object();
    if (in.m) j["m"] = in.m;
    j["alpha"] = in.alpha;
    j["beta"] = in.beta;
    auto put = [&](const char* k, const std::string& v) {
        if (!v.empty()) j[k] = v;
    };
    put("f", in.f);
    put("mu", in.mu);
    put("g", in.g);
    put("nu", in.nu);
    put("theta", in.theta);
    put("rho", in.rho);
    put("rho1", in.rho1);
    put("data", in.data);
    put("lambdas", in.lambdas);
    if (in.standard) j["standard"] = true;
    if (in.zero_derivation) j["zero_derivation"] = true;
    if (in.half) j["half"] = true;
    if (in.inject_fault) j["inject_fault"] = true;
    return j;
}

Json parse_json_flag(const std::string& flag, const std::string& src) {
    try {
        return Json::parse(src);
    } catch (const Json::parse_error& e) {
        throw PreconditionError(flag + " is not valid JSON: " + e.what());
    }
}

RatFuncFieldPtr field_for(const Inputs& in, bool zero = false) {
    if (in.m < 2) throw PreconditionError("--m must be at least 2");
    if (in.m > 64) throw PreconditionError("--m is too large");
    return make_ratfunc_field(in.m, zero || in.zero_derivation ? BaseDerivation::zero : BaseDerivation::ddt);
}

RatFunc parse_in(const std::string& flag, const std::string& src, const RatFunc& like) {
    if (src.empty()) throw PreconditionError(flag + " is required");
    try {
        return parse_scalar(src, like);
    } catch (const ParseError& e) {
        throw PreconditionError(flag + ": " + e.what());
    }
}

SymbolAlgebraPtr<RatFunc> algebra_for(const Inputs& in, bool zero = false) {
    const RatFunc t = RatFunc::t(field_for(in, zero));
    const RatFunc a = parse_in("--alpha", in.alpha, t);
    const RatFunc b = parse_in("--beta", in.beta, t);
    if (a.is_zero() || b.is_zero()) throw PreconditionError("--alpha and --beta must be nonzero");
    return make_symbol_algebra(in.m, a, b);
}

std::uint64_t seed_of(const Inputs& in) {
    return in.seed ? *in.seed : default_seed();
}

/// --standard, --data, or a seeded random valid derivation.
Derivation<RatFunc> derivation_for(const Inputs& in, const SymbolAlgebraPtr<RatFunc>& alg, bool allow_random) {
    if (in.standard && !in.data.empty()) throw PreconditionError("--standard and --data are mutually exclusive");
    if (in.standard) return standard_derivation(alg);
    if (!in.data.empty()) return Derivation<RatFunc>(alg, derivation_data_from_json(parse_json_flag("--data", in.data), alg));
    if (!allow_random) throw PreconditionError("one of --standard or --data is required");
    Rng rng(seed_of(in));
    return random_valid_derivation(rng, alg);
}

std::string verdict_text(const MatrixVerdict& v) {
    if (v.ok) return "pass";
    std::string s = "FAIL (" + v.reason;
    if (v.failing_entry)
        s += " at (" + std::to_string(v.failing_entry->first) + ", " + std::to_string(v.failing_entry->second) + "): " + v.lhs +
             " vs " + v.rhs;
    return s + ")";
}

std::string split_text(const SplitReport& r) {
    std::ostringstream os;
    os << "construction: " << r.construction << "\n";
    for (const auto& t : r.extension.tower) os << "  " << t << "\n";
    for (const auto& t : r.extension.derivation_rules) os << "  " << t << "\n";
    os << "P:\n";
    for (const auto& row : r.P) {
        os << "  [";
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << row[i];
        os << "]\n";
    }
    os << "F:\n";
    for (const auto& row : r.F) {
        os << "  [";
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << row[i];
        os << "]\n";
    }
    os << "gauge: " << verdict_text(r.gauge) << "\n";
    if (r.isomorphism) os << "isomorphism: " << verdict_text(*r.isomorphism) << "\n";
    if (r.degree) os << "[E:k] = " << *r.degree << "\n";
    if (r.transcendence_degree) os << "transcendence degree: " << *r.transcendence_degree << "\n";
    for (const auto& d : r.diagnostics) os << "note: " << d << "\n";
    return os.str();
}

Outcome split_outcome(const SplitReport& r) {
    return {split_report_json(r), split_text(r), r.ok() ? exit_pass : exit_fail};
}

Outcome cmd_algebra_check(const Inputs& in) {
    const auto alg = algebra_for(in);
    const auto u = SymbolElem<RatFunc>::u(alg), v = SymbolElem<RatFunc>::v(alg);
    const bool um = u.pow(in.m) == SymbolElem<RatFunc>::scalar(alg, alg->alpha());
    const bool vm = v.pow(in.m) == SymbolElem<RatFunc>::scalar(alg, alg->beta());
    const bool vu = v * u == (u * v).scaled(alg->omega());
    std::string why;
    const bool irreducible = kummer_irreducible(alg->alpha(), in.m, &why);
    bool phi_ok = false;
    if (irreducible) {
        phi_build(alg);
        phi_ok = true;
    }
    Outcome o;
    o.result = {{"m", in.m},
                {"alpha", scalar_json(alg->alpha())},
                {"beta", scalar_json(alg->beta())},
                {"relations", {{"u^m = alpha", um}, {"v^m = beta", vm}, {"vu = w uv", vu}}},
                {"alpha_radical_irreducible", irreducible},
                {"phi_relations", irreducible ? Json(phi_ok) : Json(nullptr)}};
    o.code = (um && vm && vu) ? exit_pass : exit_fail;
    std::ostringstream os;
    os << "A = (" << alg->alpha().str() << ", " << alg->beta().str() << ") of degree " << in.m << "\n"
       << "relations: " << ((um && vm && vu) ? "pass" : "FAIL") << "\n"
       << "z^m - alpha irreducible: " << (irreducible ? "yes" : "no (" + why + ")") << "\n";
    if (irreducible) os << "Phi relations: pass\n";
    o.text = os.str();
    return o;
}

Outcome cmd_deriv_validate(const Inputs& in) {
    const auto alg = algebra_for(in);
    const auto d = derivation_for(in, alg, false);
    const auto v = d.validate();
    Outcome o;
    o.result = {{"data", derivation_data_json(d.data())}, {"verdict", verdict_json(v)}};
    o.code = v.ok ? exit_pass : exit_fail;
    std::ostringstream os;
    os << "derivation " << (v.ok ? "valid" : "INVALID");
    if (!v.failing.empty()) {
        os << "; failing:";
        for (const auto& t : v.failing) os << " " << t;
    }
    for (const auto& t : v.diagnostics) os << "\nnote: " << t << " matrix identity disagrees with REL1/REL4";
    o.text = os.str() + "\n";
    return o;
}

Outcome cmd_deriv_decompose(const Inputs& in) {
    const auto alg = algebra_for(in);
    const auto d = derivation_for(in, alg, true);
    const auto theta = decompose(d);
    const bool round_trip = add_inner(standard_derivation(alg), theta).data() == d.data();
    Outcome o;
    o.result = {{"data", derivation_data_json(d.data())}, {"theta", symbol_json(theta)}, {"round_trip", round_trip}};
    o.code = round_trip ? exit_pass : exit_fail;
    o.text = "theta = " + theta.str() + "\nd = d_s + inner(theta): " + (round_trip ? "pass" : "FAIL") + "\n";
    return o;
}

Outcome cmd_deriv_constants(const Inputs& in) {
    Outcome o;
    std::ostringstream os;
    if (!in.theta.empty()) {
        const auto alg = algebra_for(in, true);
        const auto theta = symbol_from_json(parse_json_flag("--theta", in.theta), alg);
        const auto basis = constants_inner(theta);
        Json b = Json::array();
        os << "constants of inner(" << theta.str() << "), dimension " << basis.size() << ":\n";
        for (const auto& x : basis) {
            b.push_back(symbol_json(x));
            os << "  " << x.str() << "\n";
        }
        o.result = {{"kind", "inner"}, {"dimension", basis.size()}, {"basis", b}};
    } else {
        if (!in.standard) throw PreconditionError("deriv constants needs --standard or --theta");
        const auto alg = algebra_for(in);
        const auto c = constants_standard(alg);
        Json w = Json::array();
        os << "new constants of d_s: " << (c.new_constants() ? "yes" : "no") << "\n";
        for (const auto& x : c.witnesses) {
            w.push_back({{"i", x.i}, {"j", x.j}, {"c", x.c.str()}, {"lambda", scalar_json(x.lambda)}, {"element", symbol_json(x.element)}});
            os << "  (" << x.i << ", " << x.j << "): " << x.element.str() << "\n";
        }
        o.result = {{"kind", "standard"}, {"new_constants", c.new_constants()}, {"witnesses", w}};
    }
    o.text = os.str();
    return o;
}

std::vector<Cyclo> lambdas_for(const Inputs& in, const RatFunc& like) {
    std::vector<Cyclo> out;
    const Cyclo z = like.cyclo_zero();
    if (in.lambdas.empty()) {
        for (int i = 1; i <= in.m; ++i) out.push_back(z.from_integer(i));
        return out;
    }
    std::stringstream ss(in.lambdas);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(parse_scalar(item, z));
        } catch (const ParseError& e) {
            throw PreconditionError(std::string("--lambdas: ") + e.what());
        }
    }
    if (static_cast<int>(out.size()) != in.m) throw PreconditionError("--lambdas must list exactly m constants");
    return out;
}

Outcome cmd_matdiff_constants(const Inputs& in) {
    const RatFunc t = RatFunc::t(field_for(in));
    const RatFunc f = parse_in("--f", in.f, t);
    const auto p = corner_matrix(lambdas_for(in, t), f);
    const auto basis = corner_constants(p);
    Outcome o;
    Json b = Json::array();
    std::ostringstream os;
    os << "constants of d_P, dimension " << basis.size() << ":\n";
    for (const auto& x : basis) {
        b.push_back(matrix_json(x));
        os << "  diag(";
        for (std::size_t i = 0; i < x.rows(); ++i) os << (i ? ", " : "") << x(i, i).str();
        os << ")";
        if (!x(0, x.cols() - 1).is_zero()) os << " + (" << x(0, x.cols() - 1).str() << ") E_1m";
        os << "\n";
    }
    o.result = {{"P", matrix_json(p)}, {"dimension", basis.size()}, {"basis", b}};
    o.text = os.str();
    return o;
}

Outcome cmd_split_standard(const Inputs& in) {
    return split_outcome(split_standard(algebra_for(in)).report);
}

Outcome cmd_split_inner(const Inputs& in) {
    const auto alg = algebra_for(in, true);
    const auto rho = in.rho.empty() ? SymbolElem<RatFunc>::u(alg) : symbol_from_json(parse_json_flag("--rho", in.rho), alg);
    if (in.half) {
        if (!in.rho1.empty()) throw PreconditionError("--rho1 is not used with --half");
        return split_outcome(split_inner_even_half(rho).report);
    }
    std::optional<SymbolElem<RatFunc>> rho1;
    if (!in.rho1.empty()) rho1 = symbol_from_json(parse_json_flag("--rho1", in.rho1), alg);
    return split_outcome(split_inner_cyclic(rho, rho1).report);
}

Outcome cmd_split_generic(const Inputs& in) {
    const auto alg = algebra_for(in);
    const auto d = derivation_for(in, alg, true);
    Outcome o = split_outcome(split_generic(d).report);
    o.result["derivation"] = derivation_data_json(d.data());
    return o;
}

Outcome cmd_split_verify(const Inputs& in) {
    const auto alg = algebra_for(in);
    const auto d = derivation_for(in, alg, true);
    const auto v = d.validate();
    if (!v.ok) throw PreconditionError("the derivation data is invalid");
    const PhiMap phi = phi_build(alg);
    const GaugeMatrix g = compute_P(d, phi);
    const MatrixVerdict iso = verify_diff_isomorphism(phi, d, g.P);
    Json disc = Json::array();
    for (const auto& e : g.check.discrepancies)
        disc.push_back({{"r", e.r}, {"s", e.s}, {"constructive", e.constructive},
                        {"closed_form", e.uncovered ? Json(nullptr) : Json(e.closed_form)}, {"uncovered", e.uncovered}});
    Outcome o;
    o.result = {{"derivation", derivation_data_json(d.data())},
                {"P", matrix_json(g.P)},
                {"isomorphism", verdict_json(iso)},
                {"closed_form", {{"agrees", g.check.agrees()}, {"confined_to_range", g.check.confined_to_range()}, {"discrepancies", disc}}},
                {"diagnostics", g.diagnostics}};
    o.code = iso.ok ? exit_pass : exit_fail;
    std::ostringstream os;
    os << "P = Phi(theta - w):\n";
    for (std::size_t r = 0; r < g.P.rows(); ++r) {
        os << "  [";
        for (std::size_t c = 0; c < g.P.cols(); ++c) os << (c ? ", " : "") << g.P(r, c).str();
        os << "]\n";
    }
    os << "isomorphism: " << verdict_text(iso) << "\n";
    for (const auto& s : g.diagnostics) os << "note: " << s << "\n";
    o.text = os.str();
    return o;
}

Outcome cmd_split_norm(const Inputs& in) {
    const auto alg = algebra_for(in);
    const auto d = derivation_for(in, alg, false);
    if (in.theta.empty()) throw PreconditionError("--theta is required");
    const auto theta = symbol_from_json(parse_json_flag("--theta", in.theta), alg);
    const auto r = norm_split_check(d, theta);
    Outcome o;
    o.result = {{"p", r.p}, {"gamma", r.gamma.str()}, {"norm", scalar_json(r.norm)}, {"c", scalar_json(r.c)},
                {"verdict", r.verdict}, {"split_algebra", r.split_algebra}};
    o.code = r.verdict ? exit_pass : exit_fail;
    o.text = "p = " + std::to_string(r.p) + "\nNr(gamma) = " + r.norm.str() + "\nc = " + r.c.str() + (r.verdict ? " (constant)" : " (NOT constant)") +
             "\n" + r.split_algebra + " splits over k\n";
    return o;
}

Outcome cmd_split_maximal(const Inputs& in) {
    const auto alg = algebra_for(in);
    const RatFunc nu = parse_in("--nu", in.nu, alg->scalar_zero());
    const auto r = maximal_subfield_necessary(alg, nu);
    auto wit = [](const std::optional<RadicandWitness>& w) -> Json {
        if (!w) return nullptr;
        return {{"r", w->r}, {"lambda", w->lambda.str()}, {"h", scalar_json(w->h)}};
    };
    Outcome o;
    o.result = {{"nu", scalar_json(nu)}, {"alpha", wit(r.alpha)}, {"beta", wit(r.beta)}, {"refuted", r.refuted}, {"reason", r.reason}};
    o.code = r.refuted ? exit_fail : exit_pass;
    std::ostringstream os;
    if (r.refuted)
        os << "refuted: k(gamma), gamma^m = " << nu.str() << ", cannot split (A, d_s): " << r.reason << "\n";
    else
        os << "necessary conditions hold: r_alpha = " << r.alpha->r << ", lambda = " << r.alpha->lambda.str() << "; r_beta = " << r.beta->r
           << ", mu = " << r.beta->lambda.str() << "\n";
    o.text = os.str();
    return o;
}

Outcome cmd_ode_solve(const Inputs& in) {
    const RatFunc t = RatFunc::t(field_for(in, false));
    if (in.zero_derivation) throw PreconditionError("ode solve needs the derivation d/dt");
    const Cyclo mu = in.mu.empty() ? t.cyclo_zero() : parse_scalar(in.mu, t.cyclo_zero());
    const RatFunc g = parse_in("--g", in.g, t);
    const auto s = rational_ode_solve(mu, g);
    Json h = Json::array();
    for (const auto& x : s.homogeneous) h.push_back(scalar_json(x));
    Outcome o;
    o.result = {{"mu", mu.str()}, {"g", scalar_json(g)}, {"solvable", s.solvable()},
                {"particular", s.particular ? scalar_json(*s.particular) : Json(nullptr)}, {"homogeneous", h}};
    o.code = s.solvable() ? exit_pass : exit_fail;
    std::ostringstream os;
    if (!s.solvable()) {
        os << "no rational solution of x' + (" << mu.str() << ") x = " << g.str() << "\n";
    } else {
        os << "x = " << s.particular->str();
        for (const auto& x : s.homogeneous) os << " + C*(" << x.str() << ")";
        os << "\n";
    }
    o.text = os.str();
    return o;
}

Outcome cmd_power_detect(const Inputs& in) {
    const RatFunc t = RatFunc::t(field_for(in));
    const RatFunc f = parse_in("--f", in.f, t);
    if (f.is_zero()) throw PreconditionError("--f must be nonzero");
    const auto pd = mth_power_up_to_constant(f, in.m);
    Outcome o;
    o.result = {{"f", scalar_json(f)}, {"is_power", pd.has_value()},
                {"c", pd ? Json(pd->c.str()) : Json(nullptr)}, {"h", pd ? scalar_json(pd->h) : Json(nullptr)}};
    o.code = pd ? exit_pass : exit_fail;
    o.text = pd ? "f = (" + pd->c.str() + ")*(" + pd->h.str() + ")^" + std::to_string(in.m) + "\n" : "not an m-th power up to constant\n";
    return o;
}

Outcome cmd_replay(const Inputs& in) {
    ReplayOptions opt;
    opt.inject_t_sign_error = in.inject_fault;
    const auto suite = replay_examples(opt);
    Json cases = Json::array();
    std::ostringstream os;
    int passed = 0;
    for (const auto& c : suite.cases) {
        cases.push_back({{"name", c.name}, {"expected", c.expected}, {"passed", c.passed}, {"detail", c.detail}});
        os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        if (c.passed) ++passed;
    }
    Outcome o;
    o.result = {{"cases", cases}, {"passed", passed}, {"total", suite.cases.size()}};
    o.code = suite.all_passed() ? exit_pass : exit_fail;
    os << passed << "/" << suite.cases.size() << " cases passed\n";
    o.text = os.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with differential symbol algebras over Q(w)(t)", "diffsym"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(diffsym::version));
    Inputs in;
    std::function<Outcome(const Inputs&)> action;
    std::string command;

    enum Flag : unsigned { M = 1, AB = 2, F = 4, MU_G = 8, THETA = 16, RHO = 32, NU = 64, STD = 128, DATA = 256, ZERO = 512, LAMBDAS = 1024, SEED = 2048 };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, unsigned flags,
                    std::function<Outcome(const Inputs&)> fn, const std::string& full) {
        CLI::App* s = parent->add_subcommand(name, desc);
        if (flags & M) s->add_option("--m", in.m, "algebra degree / root-of-unity order")->required();
        if (flags & AB) {
            s->add_option("--alpha", in.alpha, "u^m (default t)");
            s->add_option("--beta", in.beta, "v^m (default t+1)");
        }
        if (flags & F) s->add_option("--f", in.f, "rational function")->required();
        if (flags & MU_G) {
            s->add_option("--mu", in.mu, "constant coefficient in Q(w) (default 0)");
            s->add_option("--g", in.g, "right-hand side")->required();
        }
        if (flags & THETA) s->add_option("--theta", in.theta, "symbol element as JSON {entries: [[i, j, scalar]...]}");
        if (flags & RHO) {
            s->add_option("--rho", in.rho, "symbol element as JSON (default u)");
            s->add_option("--rho1", in.rho1, "Kummer generator of k(rho) as JSON");
            s->add_flag("--half", in.half, "use the m/2 construction (m even, rho^m in k)");
        }
        if (flags & NU) s->add_option("--nu", in.nu, "radicand of the candidate subfield")->required();
        if (flags & STD) s->add_flag("--standard", in.standard, "use the standard derivation");
        if (flags & DATA) s->add_option("--data", in.data, "derivation as JSON {a: [[i, j, scalar]...], b: [...]}");
        if (flags & ZERO) s->add_flag("--zero-derivation", in.zero_derivation, "give k the zero derivation");
        if (flags & LAMBDAS) s->add_option("--lambdas", in.lambdas, "comma-separated distinct constants (default 1..m)");
        if (flags & SEED) s->add_option("--seed", in.seed, "seed for random inputs (default: DIFFSYM_SEED or built-in)");
        s->add_flag("--json", in.json, "emit JSON");
        s->callback([&, fn, full] {
            action = fn;
            command = full;
        });
        return s;
    };

    auto* algebra = app.add_subcommand("algebra", "symbol algebra checks")->require_subcommand(1);
    leaf(algebra, "check", "check the defining relations and the splitting map", M | AB | ZERO, cmd_algebra_check, "algebra check");

    auto* deriv = app.add_subcommand("deriv", "derivations on A")->require_subcommand(1);
    leaf(deriv, "validate", "validate derivation data", M | AB | STD | DATA | ZERO, cmd_deriv_validate, "deriv validate");
    leaf(deriv, "decompose", "write d = d_s + inner(theta)", M | AB | STD | DATA | SEED, cmd_deriv_decompose, "deriv decompose");
    leaf(deriv, "constants", "constants of d_s or of inner(theta) over a zero derivation", M | AB | STD | THETA, cmd_deriv_constants,
         "deriv constants");

    auto* matdiff = app.add_subcommand("matdiff", "matrix differential algebras")->require_subcommand(1);
    leaf(matdiff, "constants", "constants of d_P for P = diag(lambda) + f E_1m", M | F | LAMBDAS, cmd_matdiff_constants, "matdiff constants");

    auto* split = app.add_subcommand("split", "differential splitting fields")->require_subcommand(1);
    leaf(split, "standard", "finite splitting field of (A, d_s)", M | AB, cmd_split_standard, "split standard");
    leaf(split, "inner", "splitting field of (A, inner(rho)) over a zero derivation", M | AB | RHO, cmd_split_inner, "split inner");
    leaf(split, "generic", "generic splitting field E = k(xi)(X)", M | AB | STD | DATA | SEED, cmd_split_generic, "split generic");
    leaf(split, "verify", "compute P and verify the differential isomorphism", M | AB | STD | DATA | SEED, cmd_split_verify, "split verify");
    leaf(split, "norm", "norm criterion for a constant theta", M | AB | STD | DATA | THETA, cmd_split_norm, "split norm");
    leaf(split, "maximal", "necessary conditions on a cyclic maximal subfield (m prime)", M | AB | NU, cmd_split_maximal, "split maximal");

    auto* ode = app.add_subcommand("ode", "rational ODE solutions")->require_subcommand(1);
    leaf(ode, "solve", "rational solutions of x' + mu x = g", M | MU_G, cmd_ode_solve, "ode solve");

    leaf(&app, "power-detect", "decide f = c h^m with c constant", M | F, cmd_power_detect, "power-detect");
    auto* replay = leaf(&app, "replay", "replay the bundled worked examples", 0, cmd_replay, "replay");
    replay->add_flag("--inject-fault", in.inject_fault, "negate t_r in the t_r identity case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    if (!action) {
        std::cerr << app.help();
        return exit_usage;
    }

    Outcome out;
    try {
        out = action(in);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ReducibleRadicand& e) {
        std::cerr << "error: reducible radicand: " << e.what() << "\n";
        return exit_usage;
    } catch (const MismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_fail;
    }

    if (in.json) {
        Json env = {{"command", command}, {"version", diffsym::version}, {"inputs", echo_inputs(in)},
                    {"seed", in.seed ? Json(*in.seed) : Json(nullptr)}, {"exit_code", out.code}, {"result", out.result}};
        if (command == "deriv decompose" || command == "split generic" || command == "split verify") env["seed"] = seed_of(in);
        std::cout << env.dump(2) << "\n";
    } else {
        std::cout << out.text;
    }
    return out.code;
}
