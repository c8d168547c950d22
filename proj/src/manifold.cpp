#include "qhfib/manifold.hpp"

#include "qhfib/errors.hpp"

namespace qhfib {

int koszul_sign(int deg_a, int deg_b) { return (deg_a * deg_b) % 2 == 0 ? 1 : -1; }

void ManifoldModel::finalize() {
    const std::size_t d = basis.size();
    if (n <= 0) throw ParseError("manifold '" + name + "': half dimension n must be positive");
    if (d == 0) throw ParseError("manifold '" + name + "': empty basis");
    std::optional<std::size_t> top, bottom;
    for (std::size_t i = 0; i < d; ++i) {
        const int deg = basis[i].degree;
        if (deg < 0 || deg > 2 * n)
            throw ParseError("basis element '" + basis[i].label + "' has degree outside [0, 2n]");
        for (std::size_t j = 0; j < i; ++j)
            if (basis[j].label == basis[i].label) throw ParseError("duplicate basis label '" + basis[i].label + "'");
        if (deg == 2 * n) {
            if (top) throw ParseError("manifold '" + name + "' has more than one top-degree class");
            top = i;
        }
        if (deg == 0) {
            if (bottom) throw ParseError("manifold '" + name + "' has more than one point class");
            bottom = i;
        }
    }
    if (!top || !bottom) throw ParseError("manifold '" + name + "' needs a fundamental class and a point class");
    fundamental = *top;
    point = *bottom;

    if (pairing.rows() != d || pairing.cols() != d) throw ParseError("pairing matrix has the wrong shape");
    auto inv = inverse(pairing);
    if (!inv) throw DegeneratePairing("intersection pairing of '" + name + "' is degenerate");
    pairing_inv_ = *inv;
    if (pairing(fundamental, point) != 1)
        throw ParseError("manifold '" + name + "': [M] . [pt] must equal 1");

    if (has_triple) {
        if (cap.size() != d) throw ParseError("triple tensor has the wrong shape");
        for (const auto& row : cap) {
            if (row.size() != d) throw ParseError("triple tensor has the wrong shape");
            for (const auto& v : row)
                if (v.size() != d) throw ParseError("triple tensor has the wrong shape");
        }
    }

    if (h2_classes.empty()) {
        for (const auto& g : h2.names()) {
            const std::size_t i = index(g);
            if (basis[i].degree != 2)
                throw ParseError("H2 generator '" + g + "' is not a degree-2 basis class; give its homology class");
            h2_classes.push_back(unit_vec(d, i));
        }
    }
    if (h2_classes.size() != h2.rank()) throw ParseError("one homology class is needed per H2 generator");
    for (const auto& v : h2_classes)
        if (v.size() != d) throw ParseError("H2 generator class has the wrong length");
}

std::size_t ManifoldModel::index(const std::string& label) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].label == label) return i;
    throw UnknownBasisLabel(label);
}

std::vector<std::string> ManifoldModel::labels() const {
    std::vector<std::string> out;
    for (const auto& b : basis) out.push_back(b.label);
    return out;
}

Vec ManifoldModel::left_dual_expand(const Vec& values) const { return pairing_inv_.transpose() * values; }

Vec ManifoldModel::h2_class(const Vec& coords) const {
    Vec v(dim());
    for (std::size_t g = 0; g < coords.size(); ++g) axpy(v, coords[g], h2_classes[g]);
    return v;
}

bool ManifoldModel::operator==(const ManifoldModel& other) const {
    return name == other.name && n == other.n && basis == other.basis && pairing == other.pairing &&
           has_triple == other.has_triple && (!has_triple || cap == other.cap) && h2 == other.h2 &&
           h2_classes == other.h2_classes && N == other.N;
}

Rational intersect(const ManifoldModel& m, const Vec& a, const Vec& b) {
    if (a.size() != m.dim() || b.size() != m.dim()) throw ParseError("class has the wrong length");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) s += a[i] * m.pairing(i, j) * b[j];
    }
    return s;
}

Rational intersect(const ManifoldModel& m, const std::string& a, const std::string& b) {
    return m.pairing(m.index(a), m.index(b));
}

std::vector<Vec> dual_basis(const ManifoldModel& m) {
    std::vector<Vec> out;
    for (std::size_t j = 0; j < m.dim(); ++j) out.push_back(m.pairing_inverse().column(j));
    return out;
}

Vec cap(const ManifoldModel& m, const Vec& a, const Vec& b) {
    if (!m.has_triple) throw MissingTripleData("manifold '" + m.name + "' has no triple intersection data");
    Vec r(m.dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) axpy(r, a[i] * b[j], m.cap[i][j]);
    }
    return r;
}

Vec cap(const ManifoldModel& m, const std::string& a, const std::string& b) {
    return cap(m, unit_vec(m.dim(), m.index(a)), unit_vec(m.dim(), m.index(b)));
}

Vec poincare_dual_pairing(const Vec& alpha, const ManifoldModel& m) {
    if (alpha.size() != m.dim()) throw ParseError("covector has the wrong length");
    return m.left_dual_expand(alpha);
}

QHClass QHClass::basis(std::size_t dim, std::size_t i, const NovKey& exponent) {
    QHClass q(dim);
    q.add(exponent, i, 1);
    return q;
}

QHClass QHClass::from_vec(const Vec& v, const NovKey& exponent) {
    QHClass q(v.size());
    q.add(exponent, v);
    return q;
}

void QHClass::add(const NovKey& exponent, const Vec& v, const Rational& scale) {
    if (scale == 0 || qhfib::is_zero(v)) return;
    auto it = terms_.find(exponent);
    if (it == terms_.end()) it = terms_.emplace(exponent, Vec(dim_)).first;
    axpy(it->second, scale, v);
    if (qhfib::is_zero(it->second)) terms_.erase(it);
}

void QHClass::add(const NovKey& exponent, std::size_t i, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(exponent);
    if (it == terms_.end()) it = terms_.emplace(exponent, Vec(dim_)).first;
    it->second[i] += c;
    if (qhfib::is_zero(it->second)) terms_.erase(it);
}

Vec QHClass::component(const NovKey& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Vec(dim_) : it->second;
}

QHClass& QHClass::operator+=(const QHClass& other) {
    for (const auto& [k, v] : other.terms_) add(k, v);
    return *this;
}

QHClass& QHClass::operator-=(const QHClass& other) {
    for (const auto& [k, v] : other.terms_) add(k, v, -1);
    return *this;
}

QHClass QHClass::operator+(const QHClass& other) const {
    QHClass r = *this;
    r += other;
    return r;
}

QHClass QHClass::operator-(const QHClass& other) const {
    QHClass r = *this;
    r -= other;
    return r;
}

QHClass QHClass::scaled(const Rational& c) const {
    QHClass r(dim_);
    for (const auto& [k, v] : terms_) r.add(k, v, c);
    return r;
}

QHClass QHClass::shifted(const NovKey& exponent) const {
    QHClass r(dim_);
    for (const auto& [k, v] : terms_) r.add(k + exponent, v);
    return r;
}

QHClass QHClass::times(const NovikovElement& lambda) const {
    QHClass r(dim_);
    for (const auto& [k, v] : terms_)
        for (const auto& [kl, c] : lambda.terms()) r.add(k + kl, v, c);
    return r;
}

QHClass QHClass::truncated(const Rational& cutoff) const {
    QHClass r(dim_);
    for (const auto& [k, v] : terms_)
        if (energy(k) <= cutoff) r.terms_.emplace(k, v);
    return r;
}

std::optional<Rational> QHClass::min_energy() const {
    if (terms_.empty()) return std::nullopt;
    return energy(terms_.begin()->first);
}

std::optional<Rational> QHClass::max_energy() const {
    if (terms_.empty()) return std::nullopt;
    return energy(terms_.rbegin()->first);
}

QHClass apply_linear(const Matrix& map, const QHClass& q) {
    QHClass r(map.rows());
    for (const auto& [k, v] : q.terms()) r.add(k, map * v);
    return r;
}

std::vector<Rational> term_degrees(const ManifoldModel& m, const QHClass& q) {
    std::vector<Rational> out;
    for (const auto& [k, v] : q.terms())
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) out.push_back(Rational(m.basis[i].degree) + degree(k));
    return out;
}

} // namespace qhfib
