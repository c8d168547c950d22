#pragma once

#include "qhfib/linalg.hpp"
#include "qhfib/novikov.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qhfib {

struct BasisElement {
    std::string label;
    int degree = 0;

    bool operator==(const BasisElement& other) const = default;
};

// Homological model of a closed symplectic manifold of real dimension 2n.
class ManifoldModel {
public:
    std::string name;
    int n = 0;
    std::vector<BasisElement> basis;
    Matrix pairing;                       // pairing(i, j) = e_i . e_j
    std::vector<std::vector<Vec>> cap;    // cap[i][j] = coefficients of e_i cap e_j
    bool has_triple = false;
    H2Lattice h2;
    std::vector<Vec> h2_classes;          // homology class of each lattice generator
    long N = 0;
    std::size_t fundamental = 0;
    std::size_t point = 0;

    // Validates the data and caches the inverse pairing. Must be called
    // after the public fields are filled in.
    void finalize();

    std::size_t dim() const { return basis.size(); }
    std::size_t index(const std::string& label) const;
    std::vector<std::string> labels() const;
    const Matrix& pairing_inverse() const { return pairing_inv_; }

    // x with x . e_k = values[k] for every k.
    Vec left_dual_expand(const Vec& values) const;
    // Homology class of an H_2 lattice vector.
    Vec h2_class(const Vec& coords) const;

    bool operator==(const ManifoldModel& other) const;

private:
    Matrix pairing_inv_;
};

int koszul_sign(int deg_a, int deg_b);

Rational intersect(const ManifoldModel& m, const Vec& a, const Vec& b);
Rational intersect(const ManifoldModel& m, const std::string& a, const std::string& b);

// Classes f_j with e_i . f_j = delta_ij.
std::vector<Vec> dual_basis(const ManifoldModel& m);

Vec cap(const ManifoldModel& m, const Vec& a, const Vec& b);
Vec cap(const ManifoldModel& m, const std::string& a, const std::string& b);

// PD(alpha) . b = alpha(b) for every basis element b.
Vec poincare_dual_pairing(const Vec& alpha, const ManifoldModel& m);

// Element of H_* tensor Novikov ring, stored as sum of a_X e^X.
class QHClass {
public:
    using Terms = std::map<NovKey, Vec, KeyOrder>;

    explicit QHClass(std::size_t dim = 0) : dim_(dim) {}
    static QHClass basis(std::size_t dim, std::size_t i, const NovKey& exponent = {});
    static QHClass from_vec(const Vec& v, const NovKey& exponent = {});

    std::size_t dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const NovKey& exponent, const Vec& v, const Rational& scale = 1);
    void add(const NovKey& exponent, std::size_t i, const Rational& c);
    Vec component(const NovKey& exponent) const;

    QHClass& operator+=(const QHClass& other);
    QHClass& operator-=(const QHClass& other);
    QHClass operator+(const QHClass& other) const;
    QHClass operator-(const QHClass& other) const;
    QHClass scaled(const Rational& c) const;
    QHClass shifted(const NovKey& exponent) const;
    QHClass times(const NovikovElement& lambda) const;
    QHClass truncated(const Rational& cutoff) const;
    std::optional<Rational> min_energy() const;
    std::optional<Rational> max_energy() const;

    bool operator==(const QHClass& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

private:
    std::size_t dim_;
    Terms terms_;
};

// Applies a basis-indexed linear map to every coefficient vector.
QHClass apply_linear(const Matrix& map, const QHClass& q);

// Set of (rational) degrees occurring in q, one per term and basis element.
std::vector<Rational> term_degrees(const ManifoldModel& m, const QHClass& q);

} // namespace qhfib
