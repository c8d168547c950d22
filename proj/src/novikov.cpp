#include "qhfib/novikov.hpp"

#include "qhfib/detail/split.hpp"
#include "qhfib/errors.hpp"

#include <cctype>

namespace qhfib {

NovKey operator+(const NovKey& a, const NovKey& b) { return {a.omega + b.omega, a.chern + b.chern}; }
NovKey operator-(const NovKey& a, const NovKey& b) { return {a.omega - b.omega, a.chern - b.chern}; }
NovKey operator-(const NovKey& a) { return {-a.omega, -a.chern}; }
NovKey operator*(const Rational& s, const NovKey& a) { return {s * a.omega, s * a.chern}; }

H2Lattice::H2Lattice(std::vector<std::string> names, Vec omega, Vec c1, std::vector<bool> spherical)
    : names_(std::move(names)), omega_(std::move(omega)), c1_(std::move(c1)), spherical_(std::move(spherical)) {
    if (omega_.size() != names_.size() || c1_.size() != names_.size() || spherical_.size() != names_.size())
        throw ParseError("H2 lattice: generators, omega, c1 and spherical must have equal length");
    for (std::size_t g = 0; g < names_.size(); ++g)
        if (spherical_[g]) sph_index_.push_back(g);
    Matrix m(2, sph_index_.size());
    for (std::size_t j = 0; j < sph_index_.size(); ++j) {
        m(0, j) = omega_[sph_index_[j]];
        m(1, j) = c1_[sph_index_[j]];
    }
    pivots_ = rref(m);
}

std::size_t H2Lattice::index(const std::string& name) const {
    for (std::size_t g = 0; g < names_.size(); ++g)
        if (names_[g] == name) return g;
    throw ParseError("unknown H2 generator '" + name + "'");
}

NovKey H2Lattice::key(const Vec& coords) const {
    if (coords.size() != names_.size()) throw ParseError("H2 class has the wrong number of coordinates");
    return {dot(omega_, coords), dot(c1_, coords)};
}

Vec H2Lattice::representative(const NovKey& key) const {
    auto attempt = [&](const std::vector<std::size_t>& cols) -> std::optional<Vec> {
        Matrix m(2, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            m(0, j) = omega_[cols[j]];
            m(1, j) = c1_[cols[j]];
        }
        auto x = solve(m, Vec{key.omega, key.chern});
        if (!x) return std::nullopt;
        Vec full(names_.size());
        for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = (*x)[j];
        return full;
    };
    if (key.is_zero()) return Vec(names_.size());
    if (auto v = attempt(sph_index_)) return *v;
    std::vector<std::size_t> all(names_.size());
    for (std::size_t g = 0; g < all.size(); ++g) all[g] = g;
    if (auto v = attempt(all)) return *v;
    throw Inconsistent("no H2 class with omega = " + to_string(key.omega) + ", c1 = " + to_string(key.chern));
}

bool H2Lattice::spherical_combination(const Vec& coords) const {
    for (std::size_t g = 0; g < coords.size(); ++g)
        if (coords[g] != 0 && !spherical_[g]) return false;
    return true;
}

bool H2Lattice::omega_vanishes_on_spherical() const {
    for (auto g : sph_index_)
        if (omega_[g] != 0) return false;
    return true;
}

bool H2Lattice::chern_vanishes_on_spherical() const {
    for (auto g : sph_index_)
        if (c1_[g] != 0) return false;
    return true;
}

std::string H2Lattice::format(const NovKey& key) const { return format_coords(representative(key)); }

std::string H2Lattice::format_coords(const Vec& coords) const {
    std::string out;
    for (std::size_t g = 0; g < coords.size(); ++g) {
        const Rational& c = coords[g];
        if (c == 0) continue;
        const Rational a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (a != 1) out += is_integer(a) ? to_string(a) : "(" + to_string(a) + ")";
        out += names_[g];
    }
    return out.empty() ? "0" : out;
}

Vec H2Lattice::parse_coords(const std::string& text) const {
    Vec coords(names_.size());
    if (detail::trim(text) == "0" || detail::trim(text).empty()) return coords;
    for (const auto& [sign, term] : detail::split_signed_terms(text)) {
        std::string_view t = term;
        Rational coef = 1;
        if (!t.empty() && t.front() == '(') {
            const auto close = t.find(')');
            if (close == std::string_view::npos) throw ParseError("unbalanced '(' in exponent '" + text + "'");
            coef = parse_rational(t.substr(0, close + 1));
            t = detail::trim(t.substr(close + 1));
        } else {
            std::size_t i = 0;
            while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/')) ++i;
            if (i > 0) {
                coef = parse_rational(t.substr(0, i));
                t = detail::trim(t.substr(i));
            }
        }
        if (!t.empty() && t.front() == '*') t = detail::trim(t.substr(1));
        std::string name(t);
        const auto slash = name.rfind('/');
        if (slash != std::string::npos && slash + 1 < name.size() &&
            std::isdigit(static_cast<unsigned char>(name[slash + 1]))) {
            coef /= parse_rational(name.substr(slash + 1));
            name = name.substr(0, slash);
        }
        coords[index(name)] += sign * coef;
    }
    return coords;
}

NovikovElement NovikovElement::scalar(const Rational& c) { return monomial(NovKey{}, c); }

NovikovElement NovikovElement::monomial(const NovKey& exponent, const Rational& c) {
    NovikovElement x;
    x.add(exponent, c);
    return x;
}

void NovikovElement::add(const NovKey& exponent, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational NovikovElement::coefficient(const NovKey& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

NovikovElement nov_add(const NovikovElement& x, const NovikovElement& y) {
    NovikovElement r = x;
    for (const auto& [k, c] : y.terms()) r.add(k, c);
    return r;
}

NovikovElement nov_neg(const NovikovElement& x) {
    NovikovElement r;
    for (const auto& [k, c] : x.terms()) r.add(k, -c);
    return r;
}

NovikovElement nov_mul(const NovikovElement& x, const NovikovElement& y) {
    NovikovElement r;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) r.add(kx + ky, cx * cy);
    return r;
}

NovikovElement nov_mul(const NovikovElement& x, const NovikovElement& y, const Rational& cutoff) {
    NovikovElement r;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            const NovKey k = kx + ky;
            if (energy(k) <= cutoff) r.add(k, cx * cy);
        }
    return r;
}

NovikovElement nov_truncate(const NovikovElement& x, const Rational& cutoff) {
    NovikovElement r;
    for (const auto& [k, c] : x.terms())
        if (energy(k) <= cutoff) r.add(k, c);
    return r;
}

NovikovElement nov_invert(const NovikovElement& x, const Rational& cutoff) {
    if (x.is_zero()) throw NotInvertible("zero is not invertible");
    if (cutoff < 0) throw CutoffTooSmall("inversion cutoff must be nonnegative, got " + to_string(cutoff));
    const auto& [lead_key, lead_coef] = *x.terms().begin();
    for (const auto& [k, c] : x.terms())
        if (!(k == lead_key) && k.omega == lead_key.omega)
            throw NotInvertible("lowest-energy part is not a single monomial");

    // x = lead * (1 + r) with every term of r of positive energy.
    const NovikovElement lead_inv = NovikovElement::monomial(-lead_key, 1 / lead_coef);
    NovikovElement r = nov_mul(x, lead_inv);
    r.add(NovKey{}, -1);
    if (r.is_zero()) return lead_inv;
    const Rational valuation = energy(r.terms().begin()->first);
    if (valuation <= 0) throw CutoffTooSmall("correction term has nonpositive valuation");

    const NovikovElement minus_r = nov_neg(r);
    NovikovElement series = NovikovElement::scalar(1);
    NovikovElement power = NovikovElement::scalar(1);
    while (true) {
        power = nov_mul(power, minus_r, cutoff);
        if (power.is_zero()) break;
        series = nov_add(series, power);
    }
    return nov_mul(series, lead_inv);
}

std::string format_novikov(const NovikovElement& x, const H2Lattice& lattice) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : x.terms()) {
        const Rational a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (k.is_zero()) {
            out += to_string(a);
        } else {
            if (a != 1) out += to_string(a) + "*";
            out += "e^{" + lattice.format(k) + "}";
        }
    }
    return out;
}

} // namespace qhfib
