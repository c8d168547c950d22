#pragma once

#include "qhfib/linalg.hpp"
#include "qhfib/novikov.hpp"
#include "qhfib/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qhfib {

// Sparse table of genus-zero Gromov-Witten invariants n(v_1, ..., v_k; B).
// Arguments are basis indices of some model; classes are H_2 lattice
// vectors keyed modulo ~. Entries are stored with arguments sorted, the
// Koszul sign of the sorting permutation folded into the value.
//
// A declared arity is complete at every class whose energy (omega plus the
// table offset) is at most complete_below: missing entries there are zero.
// Lookups past that level, or into an undeclared arity, raise TableIncomplete.
class GWTable {
public:
    struct Entry {
        std::vector<std::size_t> args;
        NovKey key;
        Rational value;
    };

    GWTable() = default;
    GWTable(std::vector<int> degrees, H2Lattice lattice, Level complete_below, Rational energy_offset = 0);

    const std::vector<int>& degrees() const { return degrees_; }
    const H2Lattice& lattice() const { return lattice_; }
    const Level& complete_below() const { return complete_below_; }
    const Rational& energy_offset() const { return energy_offset_; }
    void set_complete_below(Level level) { complete_below_ = std::move(level); }
    void set_energy_offset(Rational e) { energy_offset_ = std::move(e); }

    // For tables of section classes sigma_ref + B: the first Chern number of
    // the tangent bundle on sigma_ref. Curve tables keep zero.
    const Rational& chern_offset() const { return chern_offset_; }
    void set_chern_offset(Rational c) { chern_offset_ = std::move(c); }
    bool section_classes() const { return section_; }
    void set_section_classes(bool s) { section_ = s; }
    bool is_zero_class(const NovKey& key) const { return !section_ && key.is_zero(); }

    // Expected-dimension test for a space of real dimension 2 * half_dim.
    bool dimension_rule(const std::vector<std::size_t>& args, const NovKey& key, int half_dim) const;

    void declare(std::size_t arity);
    bool has(std::size_t arity) const;
    std::vector<std::size_t> arities() const;

    // Adds value to the entry; declares the arity when needed.
    void add(const std::vector<std::size_t>& args, const NovKey& key, const Rational& value);
    void add(const std::vector<std::size_t>& args, const Vec& coords, const Rational& value);
    void set(const std::vector<std::size_t>& args, const NovKey& key, const Rational& value);

    Rational class_energy(const NovKey& key) const { return key.omega + energy_offset_; }
    bool covers(const NovKey& key) const { return level_covers(complete_below_, class_energy(key)); }

    // Raw stored value (zero if absent) without completeness checks.
    Rational stored(const std::vector<std::size_t>& args, const NovKey& key) const;
    Rational lookup(const std::vector<std::size_t>& args, const NovKey& key) const;

    // Multilinear extension of lookup to arbitrary coefficient vectors.
    Rational evaluate(const std::vector<Vec>& args, const NovKey& key) const;

    // Throws TableIncomplete unless the arity is declared and covers key.
    void require(std::size_t arity, const NovKey& key) const;
    // Same, for every class up to the given energy.
    void require_energy(std::size_t arity, const Rational& class_energy_bound) const;

    // Nonzero entries in deterministic order: energy, Chern value, arguments.
    std::vector<Entry> entries(std::size_t arity) const;
    std::vector<NovKey> keys(std::size_t arity) const;
    std::vector<NovKey> all_keys() const;

    // Lowest class energy among nonzero entries of every arity.
    std::optional<Rational> min_class_energy() const;

    std::string describe(const Entry& e, const std::vector<std::string>& labels) const;

    bool operator==(const GWTable& other) const;

private:
    struct Slot {
        NovKey key;
        std::vector<std::size_t> args;
    };
    struct SlotOrder {
        bool operator()(const Slot& a, const Slot& b) const;
    };
    using Values = std::map<Slot, Rational, SlotOrder>;

    int canonicalize(std::vector<std::size_t>& args) const;

    std::vector<int> degrees_;
    H2Lattice lattice_;
    Level complete_below_;
    Rational energy_offset_;
    Rational chern_offset_;
    bool section_ = false;
    std::map<std::size_t, Values> arity_;
};

} // namespace qhfib
