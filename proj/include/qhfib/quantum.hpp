#pragma once

#include "qhfib/gw_table.hpp"
#include "qhfib/manifold.hpp"
#include "qhfib/report.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace qhfib {

struct QuantumManifold {
    ManifoldModel model;
    GWTable gw;

    bool operator==(const QuantumManifold& other) const = default;
};

// Structure constants of a product defined by (a * b)_B . c = n(a, b, c; B)
// against the pairing of `space`. With `classical` set, the zero class is
// served by the cap product and zero-class table entries are ignored.
// The exponent attached to the class-B coefficient of a e^X * b e^Y is
// X + Y - B + shift.
class ProductEngine {
public:
    ProductEngine(const ManifoldModel& space, GWTable table, bool classical, NovKey shift = {});

    QHClass multiply(const QHClass& a, const QHClass& b, const Rational& cutoff) const;
    QHClass multiply_basis(std::size_t i, std::size_t j, const Rational& cutoff) const;

    const GWTable& table() const { return table_; }
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    bool classical_;
    NovKey shift_;
    GWTable table_;
    std::vector<std::vector<Vec>> cap_;
    std::vector<std::vector<std::map<NovKey, Vec, KeyOrder>>> sc_;
};

QHClass quantum_product(const QuantumManifold& m, const QHClass& a, const QHClass& b, const Rational& cutoff);

// (e_i * e_j) * e_k = e_i * (e_j * e_k) on every basis triple, plus the
// splitting of fixed cross-ratio four-point invariants when those exist.
VerificationReport verify_associativity(const QuantumManifold& m, const Rational& cutoff);

// Homology class of a curve class key; the default takes the lattice
// representative of the key.
using ClassOf = std::function<Vec(const NovKey&)>;

VerificationReport validate_gw_axioms(const GWTable& table, const ManifoldModel& m, const ClassOf& class_of = {});

// Inverse of q up to energy cutoff, or nullopt when q is not a unit.
std::optional<QHClass> is_unit(const QuantumManifold& m, const QHClass& q, const Rational& cutoff);

// True when every entry in a class of positive Chern number vanishes.
bool qh_plus_closure_check(const GWTable& table);

// Membership in QH^+: every component is an even class of degree below 2n.
bool in_qh_plus(const ManifoldModel& m, const QHClass& q);

// Determinant of a square matrix over the Novikov ring, truncated at cutoff.
NovikovElement nov_determinant(const std::vector<std::vector<NovikovElement>>& m, const Rational& cutoff);

} // namespace qhfib
