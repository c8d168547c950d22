#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhfib::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits "a + b - c" into signed terms. Binary operators must be surrounded
// by whitespace so that labels such as "T-" or "Z+" survive; a leading '-'
// glued to a term is a unary minus. Braces protect their contents.
inline std::vector<std::pair<int, std::string>> split_signed_terms(std::string_view text) {
    std::vector<std::pair<int, std::string>> out;
    std::string_view s = trim(text);
    int sign = 1;
    int depth = 0;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        std::string_view term = trim(s.substr(start, end - start));
        int term_sign = sign;
        while (!term.empty() && term.front() == '-') {
            term_sign = -term_sign;
            term = trim(term.substr(1));
        }
        out.emplace_back(term_sign, std::string(term));
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '{' || c == '(') ++depth;
        else if (c == '}' || c == ')') --depth;
        else if (depth == 0 && (c == '+' || c == '-') && i > 0 && i + 1 < s.size() &&
                 std::isspace(static_cast<unsigned char>(s[i - 1])) &&
                 std::isspace(static_cast<unsigned char>(s[i + 1]))) {
            flush(i);
            sign = c == '+' ? 1 : -1;
            start = i + 1;
        }
    }
    flush(s.size());
    return out;
}

} // namespace qhfib::detail
