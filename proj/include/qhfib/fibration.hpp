#pragma once

#include "qhfib/quantum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qhfib {

// Hamiltonian fibration P -> S^2 with fiber M. Classes of P are vectors over
// `total.basis`; `total.h2` lists the degree-2 classes of P with omega := u_phi
// and c1 := c_phi. Vertical and section tables are keyed by fiber lattice
// classes B, standing for iota(B) and sigma_ref + iota(B) respectively.
struct FibrationModel {
    QuantumManifold fiber;
    ManifoldModel total;
    Matrix iota;        // column j is iota(e_j)
    Matrix splitting;   // column j is s(e_j)
    Vec u_phi;
    Vec c_phi;
    Vec sigma_ref;
    std::string sigma_label;
    GWTable gw_fiber;
    GWTable gw_section;

    // Checks shapes and sigma_ref . [M] = 1, then sets the section table
    // offsets from u_phi(sigma_ref) and c_phi(sigma_ref).
    void finalize();

    Rational u_ref() const { return dot(u_phi, sigma_ref); }
    Rational c_ref() const { return dot(c_phi, sigma_ref); }
    Vec iota_of(const Vec& a) const { return iota * a; }
    Vec s_of(const Vec& a) const { return splitting * a; }
    Vec fiber_class_in_total(const NovKey& key) const;
    Vec section_class_in_total(const NovKey& offset) const;

    bool operator==(const FibrationModel& other) const = default;
};

// Fiber class x with iota(x) = v cap [M]; throws Inconsistent otherwise.
Vec restrict_to_fiber(const FibrationModel& f, const Vec& v);
QHClass restrict_to_fiber(const FibrationModel& f, const QHClass& v);

// Section class sigma_ref + iota(B), held as the key of B.
struct SectionClass {
    NovKey offset;

    bool operator==(const SectionClass& other) const = default;
};

// Two-point section invariants n_P(iota a, iota b; sigma_ref + iota B) over
// fiber arguments: everything the Seidel operation needs.
struct SeidelData {
    QuantumManifold fiber;
    std::string ref_label;
    Rational u_ref;
    Rational c_ref;
    GWTable table;

    Rational u(const SectionClass& s) const { return u_ref + s.offset.omega; }
    Rational c(const SectionClass& s) const { return c_ref + s.offset.chern; }
    std::string format(const SectionClass& s) const;

    bool operator==(const SeidelData& other) const = default;
};

SeidelData seidel_data(const FibrationModel& f);

QHClass psi(const SeidelData& s, const SectionClass& sigma, const QHClass& a, const Rational& cutoff);
QHClass psi(const FibrationModel& f, const SectionClass& sigma, const QHClass& a, const Rational& cutoff);
QHClass q_sigma(const SeidelData& s, const SectionClass& sigma, const Rational& cutoff);
VerificationReport check_module_property(const SeidelData& s, const SectionClass& sigma, const Rational& cutoff);

// Section class with u = c = 0 when the spherical periods allow it; see the
// rank cases in the implementation.
SectionClass sigma_phi(const H2Lattice& fiber_lattice, const Rational& u_ref, const Rational& c_ref);
SectionClass sigma_phi(const SeidelData& s);
SectionClass sigma_phi(const FibrationModel& f);

QHClass rho(const SeidelData& s, const Rational& cutoff);
QHClass rho(const FibrationModel& f, const Rational& cutoff);

struct RhoShape {
    enum class Kind { monomial_scalar, scalar_plus_qh_plus, other } kind = Kind::other;
    Rational mu;
    NovKey A;
};
RhoShape rho_shape_check(const ManifoldModel& m, const QHClass& q);
std::string shape_name(RhoShape::Kind kind);

QHClass vertical_product(const FibrationModel& f, const QHClass& u, const QHClass& v, const Rational& cutoff);
QHClass horizontal_product(const FibrationModel& f, const QHClass& u, const QHClass& v, const SectionClass& sigma,
                           const Rational& cutoff);

VerificationReport quantum_wang_check(const FibrationModel& f, const Rational& cutoff);

// Splitting s with s(e_i) . s(e_k) = 0 obtained from a primed splitting
// s' with s'(e_i) . iota(f_j) = delta_ij.
Matrix correct_splitting(const FibrationModel& f);
VerificationReport check_splitting(const FibrationModel& f, const Matrix& s);

VerificationReport verify_prop_gw(const FibrationModel& f, const Rational& cutoff);

// n_chi(v1, v2, v3, v4; sigma_ref + B) split into a vertical and a section
// component, the vertical part in class 0 being the classical triple product.
Rational chi_decomposition(const FibrationModel& f, const std::vector<Vec>& v, const NovKey& offset);

struct CompositionResult {
    SeidelData composite;
    VerificationReport report;
};
// Seidel data of psi * phi, given the data of phi (first) and psi (second).
SeidelData compose_tables(const SeidelData& phi, const SeidelData& psi_data);
CompositionResult compose(const SeidelData& phi, const SeidelData& psi_data, const Rational& cutoff);

// Data of the inverse loop: u and c change sign, Psi is inverted.
SeidelData mirror(const SeidelData& s, const Rational& cutoff);

Rational invariant_Ic(const FibrationModel& f);
Vec invariant_Iu(const FibrationModel& f);
std::string format_Iu(const FibrationModel& f, const Vec& iu);
Rational invariant_Ik(const FibrationModel& f, int k);

struct RingSplitResult {
    bool splits = false;
    std::string mode;
    Matrix s_A;
    Rational mu;
    SectionClass sigma_A;
    Rational Ic;
    Vec Iu;
    RhoShape shape;
    VerificationReport report;
};
enum class SplitMode { vertical, horizontal_unit, monomial_rho };
std::string split_mode_name(SplitMode mode);
RingSplitResult ring_split_check(const FibrationModel& f, const Rational& cutoff,
                                 SplitMode mode = SplitMode::vertical);

// The trivial fibration M x S^2 with flat section pt x S^2. Total labels are
// "x|pt" for iota(x) = x x pt and "x|S2" for s(x) = x x S^2.
FibrationModel product_fixture(const QuantumManifold& m);
bool is_product_bundle(const FibrationModel& f);

// Vertical and horizontal products of M x S^2 against QH(M) tensor QH(S^2).
VerificationReport verify_product_formula(const FibrationModel& f, const Rational& cutoff);

struct NonsqueezingResult {
    std::optional<Rational> bound;
    Rational invariant;
    std::string reason;
};
NonsqueezingResult nonsqueezing_bound(const FibrationModel& f, const Rational& kappa, const Rational& cutoff);

} // namespace qhfib
