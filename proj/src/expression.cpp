#include "qhfib/expression.hpp"

#include "qhfib/detail/split.hpp"
#include "qhfib/errors.hpp"

#include <algorithm>

namespace qhfib {

namespace {

std::size_t label_index(const std::vector<std::string>& labels, std::string_view label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw UnknownBasisLabel(std::string(label));
    return static_cast<std::size_t>(it - labels.begin());
}

struct Term {
    Rational coef = 1;
    std::size_t index = 0;
    std::string exponent;
};

Term parse_term(const std::vector<std::string>& labels, std::string_view t, const std::string& whole) {
    Term term;
    if (t.empty()) throw ParseError("empty term in class expression '" + whole + "'");
    const auto at = t.find('@');
    if (at != std::string_view::npos) {
        std::string_view e = detail::trim(t.substr(at + 1));
        if (e.size() < 4 || e.substr(0, 3) != "e^{" || e.back() != '}')
            throw ParseError("exponent must read e^{...} in '" + whole + "'");
        term.exponent = std::string(e.substr(3, e.size() - 4));
        t = detail::trim(t.substr(0, at));
    }
    const auto star = t.rfind('*');
    if (star != std::string_view::npos) {
        term.coef = parse_rational(detail::trim(t.substr(0, star)));
        t = detail::trim(t.substr(star + 1));
    }
    term.index = label_index(labels, t);
    return term;
}

std::string coef_prefix(const Rational& a) { return a == 1 ? "" : to_string(a) + "*"; }

} // namespace

QHClass parse_class(const std::vector<std::string>& labels, const H2Lattice& lattice, const std::string& text) {
    QHClass q(labels.size());
    if (detail::trim(text) == "0") return q;
    for (const auto& [sign, raw] : detail::split_signed_terms(text)) {
        const Term t = parse_term(labels, raw, text);
        const NovKey key = t.exponent.empty() ? NovKey{} : lattice.key(lattice.parse_coords(t.exponent));
        q.add(key, t.index, sign * t.coef);
    }
    return q;
}

QHClass parse_class(const ManifoldModel& m, const std::string& text) { return parse_class(m.labels(), m.h2, text); }

std::string format_class(const std::vector<std::string>& labels, const H2Lattice& lattice, const QHClass& q) {
    std::string out;
    for (const auto& [key, v] : q.terms()) {
        const std::string suffix = key.is_zero() ? "" : "@e^{" + lattice.format(key) + "}";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            if (out.empty()) out += v[i] < 0 ? "-" : "";
            else out += v[i] < 0 ? " - " : " + ";
            out += coef_prefix(abs(v[i])) + labels.at(i) + suffix;
        }
    }
    return out.empty() ? "0" : out;
}

std::string format_class(const ManifoldModel& m, const QHClass& q) { return format_class(m.labels(), m.h2, q); }

Vec parse_vec(const std::vector<std::string>& labels, const std::string& text) {
    Vec v(labels.size());
    if (detail::trim(text) == "0") return v;
    for (const auto& [sign, raw] : detail::split_signed_terms(text)) {
        const Term t = parse_term(labels, raw, text);
        if (!t.exponent.empty()) throw ParseError("unexpected Novikov exponent in '" + text + "'");
        v[t.index] += sign * t.coef;
    }
    return v;
}

std::string format_vec(const std::vector<std::string>& labels, const Vec& v) {
    return format_class(labels, H2Lattice{}, QHClass::from_vec(v));
}

} // namespace qhfib
