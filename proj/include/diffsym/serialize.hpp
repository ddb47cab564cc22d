#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "deriv.hpp"
#include "matdiff.hpp"
#include "parse.hpp"
#include "split.hpp"

namespace diffsym {

using Json = nlohmann::json;

inline Json scalar_json(const RatFunc& x) {
    return {{"num", RatFunc::poly_str(x.num())}, {"den", RatFunc::poly_str(x.den())}};
}

/// {num, den} with den = "1" for elements printed as a single expression.
template <RingElement E>
Json scalar_json(const E& x) {
    return {{"num", x.str()}, {"den", "1"}};
}

/// Accepts a scalar string or {num, den}.
template <RingElement E>
E scalar_from_json(const Json& j, const E& like) {
    if (j.is_string()) return parse_scalar(j.get<std::string>(), like);
    if (j.is_number_integer()) return like.from_integer(j.get<long>());
    if (j.is_object() && j.contains("num")) {
        const E num = parse_scalar(j.at("num").get<std::string>(), like);
        if (!j.contains("den")) return num;
        const E den = parse_scalar(j.at("den").get<std::string>(), like);
        if constexpr (FieldElement<E>) {
            if (den.is_zero()) throw PreconditionError("zero denominator in scalar JSON");
            return num * den.inv();
        } else {
            return num;
        }
    }
    throw PreconditionError("scalar JSON must be a string or {num, den}");
}

template <FieldElement T>
Json symbol_json(const SymbolElem<T>& x) {
    Json entries = Json::array();
    for (int i = 0; i < x.m(); ++i)
        for (int j = 0; j < x.m(); ++j)
            if (!x.coeff(i, j).is_zero()) entries.push_back({i, j, x.coeff(i, j).str()});
    return {{"m", x.m()}, {"entries", entries}};
}

/// {m, entries: [[i, j, scalar], ...]}; m may be omitted.
template <FieldElement T>
SymbolElem<T> symbol_from_json(const Json& j, const SymbolAlgebraPtr<T>& alg) {
    if (!j.is_object() || !j.contains("entries")) throw PreconditionError("symbol element JSON needs an 'entries' array");
    if (j.contains("m") && j.at("m").get<int>() != alg->m()) throw PreconditionError("symbol element JSON has the wrong m");
    SymbolElem<T> x(alg);
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw PreconditionError("symbol entries are [i, j, scalar] triples");
        const int i = e[0].get<int>(), k = e[1].get<int>();
        if (i < 0 || k < 0 || i >= alg->m() || k >= alg->m()) throw PreconditionError("symbol entry index out of range");
        x = x.with(i, k, x.coeff(i, k) + scalar_from_json(e[2], alg->scalar_zero()));
    }
    return x;
}

template <FieldElement T>
Json derivation_data_json(const DerivationData<T>& d) {
    auto sparse = [&](const std::vector<T>& g) {
        Json out = Json::array();
        for (int i = 0; i < d.m; ++i)
            for (int j = 0; j < d.m; ++j) {
                const T& c = g[static_cast<std::size_t>(i * d.m + j)];
                if (!c.is_zero()) out.push_back({i, j, c.str()});
            }
        return out;
    };
    return {{"a", sparse(d.a)}, {"b", sparse(d.b)}};
}

/// {a: [[i, j, scalar]...], b: [...]}: d(u) and d(v).
template <FieldElement T>
DerivationData<T> derivation_data_from_json(const Json& j, const SymbolAlgebraPtr<T>& alg) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw PreconditionError("derivation JSON needs 'a' and 'b'");
    const auto a = symbol_from_json(Json{{"entries", j.at("a")}}, alg);
    const auto b = symbol_from_json(Json{{"entries", j.at("b")}}, alg);
    DerivationData<T> d;
    d.m = alg->m();
    d.a = a.coeffs();
    d.b = b.coeffs();
    return d;
}

inline Json verdict_json(const DerivationVerdict& v) {
    return {{"ok", v.ok}, {"failing", v.failing}, {"tgamma_holds", v.tgamma_holds}, {"diagnostics", v.diagnostics}};
}

template <RingElement T>
Json matrix_json(const Matrix<T>& x) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c)
            if (!x(r, c).is_zero()) entries.push_back({r, c, x(r, c).str()});
    return {{"m", x.rows()}, {"entries", entries}};
}

inline Json matrix_json(const std::vector<std::vector<std::string>>& x) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t c = 0; c < x[r].size(); ++c)
            if (x[r][c] != "0") entries.push_back({r, c, x[r][c]});
    return {{"m", x.size()}, {"entries", entries}};
}

inline Json verdict_json(const MatrixVerdict& v) {
    Json fe = nullptr;
    if (v.failing_entry) fe = {v.failing_entry->first, v.failing_entry->second};
    return {{"ok", v.ok}, {"failing_entry", fe}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"reason", v.reason}};
}

inline Json split_report_json(const SplitReport& r) {
    Json out;
    out["construction"] = r.construction;
    out["extension"] = {{"tower", r.extension.tower}, {"derivation_rules", r.extension.derivation_rules}};
    out["P"] = matrix_json(r.P);
    out["F"] = matrix_json(r.F);
    out["verdicts"] = {{"gauge", verdict_json(r.gauge)}, {"isomorphism", r.isomorphism ? verdict_json(*r.isomorphism) : Json(nullptr)}};
    out["degree"] = r.degree ? Json(*r.degree) : Json(nullptr);
    out["degree_bound"] = r.degree_bound ? Json(*r.degree_bound) : Json(nullptr);
    out["transcendence_degree"] = r.transcendence_degree ? Json(*r.transcendence_degree) : Json(nullptr);
    out["diagnostics"] = r.diagnostics;
    out["ok"] = r.ok();
    return out;
}

}  // namespace diffsym
