#pragma once

#include <string>
#include <vector>

namespace diffsym::detail {

/// One summand `coef*mono` in canonical text form; compound coefficients get parentheses.
inline std::string format_term(const std::string& coef, bool compound, const std::string& mono) {
    if (mono.empty()) return coef;
    if (compound) return "(" + coef + ")*" + mono;
    if (coef == "1") return mono;
    if (coef == "-1") return "-" + mono;
    return coef + "*" + mono;
}

inline std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (!terms[i].empty() && terms[i][0] == '-')
            out += terms[i];
        else
            out += "+" + terms[i];
    }
    return out;
}

inline std::string power_string(const std::string& name, long e) {
    if (e == 0) return "";
    if (e == 1) return name;
    return name + "^" + std::to_string(e);
}

}  // namespace diffsym::detail
