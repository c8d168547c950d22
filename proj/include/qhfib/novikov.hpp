#pragma once

#include "qhfib/linalg.hpp"
#include "qhfib/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qhfib {

// A class of H_2 modulo the relation B ~ B' iff omega and c_1 agree on B - B'.
// The pair (omega, chern) is the canonical key of the equivalence class.
struct NovKey {
    Rational omega;
    Rational chern;

    bool operator==(const NovKey& other) const = default;
    bool is_zero() const { return omega == 0 && chern == 0; }
};

NovKey operator+(const NovKey& a, const NovKey& b);
NovKey operator-(const NovKey& a, const NovKey& b);
NovKey operator-(const NovKey& a);
NovKey operator*(const Rational& s, const NovKey& a);

// Energy of the monomial e^X is -omega(X); degree of e^X is 2 c_1(X).
inline Rational energy(const NovKey& exponent) { return -exponent.omega; }
inline Rational degree(const NovKey& exponent) { return 2 * exponent.chern; }

// Orders monomials by increasing energy, ties broken by Chern value.
struct KeyOrder {
    bool operator()(const NovKey& a, const NovKey& b) const {
        if (a.omega != b.omega) return a.omega > b.omega;
        return a.chern < b.chern;
    }
};

// Finitely generated lattice of H_2 classes with the omega and c_1 covectors.
class H2Lattice {
public:
    H2Lattice() = default;
    H2Lattice(std::vector<std::string> names, Vec omega, Vec c1, std::vector<bool> spherical);

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const Vec& omega() const { return omega_; }
    const Vec& c1() const { return c1_; }
    const std::vector<bool>& spherical() const { return spherical_; }
    std::size_t index(const std::string& name) const;

    NovKey key(const Vec& coords) const;

    // Canonical coordinates of a key: supported on the pivot generators of the
    // spherical part, in declared order.
    Vec representative(const NovKey& key) const;

    bool spherical_combination(const Vec& coords) const;

    // Rank of (omega, c_1) restricted to the spherical generators.
    std::size_t spherical_rank() const { return pivots_.size(); }
    bool omega_vanishes_on_spherical() const;
    bool chern_vanishes_on_spherical() const;

    std::string format(const NovKey& key) const;
    std::string format_coords(const Vec& coords) const;
    Vec parse_coords(const std::string& text) const;

    bool operator==(const H2Lattice& other) const {
        return names_ == other.names_ && omega_ == other.omega_ && c1_ == other.c1_ && spherical_ == other.spherical_;
    }

private:
    std::vector<std::string> names_;
    Vec omega_;
    Vec c1_;
    std::vector<bool> spherical_;
    std::vector<std::size_t> sph_index_;
    std::vector<std::size_t> pivots_;
};

// Finite element of the Novikov ring: sum of lambda_X e^X.
class NovikovElement {
public:
    using Terms = std::map<NovKey, Rational, KeyOrder>;

    NovikovElement() = default;
    static NovikovElement scalar(const Rational& c);
    static NovikovElement monomial(const NovKey& exponent, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const NovKey& exponent, const Rational& c);
    Rational coefficient(const NovKey& exponent) const;

    bool operator==(const NovikovElement& other) const { return terms_ == other.terms_; }

private:
    Terms terms_;
};

NovikovElement nov_add(const NovikovElement& x, const NovikovElement& y);
NovikovElement nov_neg(const NovikovElement& x);
NovikovElement nov_mul(const NovikovElement& x, const NovikovElement& y);
NovikovElement nov_mul(const NovikovElement& x, const NovikovElement& y, const Rational& cutoff);

// Drops every monomial of energy above the cutoff.
NovikovElement nov_truncate(const NovikovElement& x, const Rational& cutoff);

// Inverse by geometric series around the lowest-energy monomial; the product
// with x equals 1 up to energy cutoff.
NovikovElement nov_invert(const NovikovElement& x, const Rational& cutoff);

std::string format_novikov(const NovikovElement& x, const H2Lattice& lattice);

} // namespace qhfib
