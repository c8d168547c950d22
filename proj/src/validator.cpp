#include "qhfib/validator.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"

#include <algorithm>
#include <functional>

namespace qhfib {

namespace {

const std::vector<std::string> kFiberSuites = {"model", "quantum", "assoc", "axioms"};
const std::vector<std::string> kFibrationSuites = {"prop-gw",    "wang",       "module", "compose", "splitting",
                                                   "invariants", "ring-split", "rho",    "product"};

std::string vec_text(const ManifoldModel& m, const Vec& v) { return format_vec(m.labels(), v); }

std::string pair_label(const ManifoldModel& m, std::size_t i, std::size_t j) {
    return "(" + m.basis[i].label + ", " + m.basis[j].label + ")";
}

VerificationReport guarded_suite(const std::string& name, const Rational& cutoff, const Level& completeness,
                                 const std::function<VerificationReport()>& body) {
    VerificationReport report;
    try {
        report = body();
    } catch (const TableIncomplete& e) {
        report = VerificationReport{};
        report.skip(name, "", e.what());
    }
    report.suite = name;
    report.cutoff = cutoff;
    report.table_completeness = completeness;
    return report;
}

VerificationReport check_module_suite(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    const SeidelData s = seidel_data(f);
    const SectionClass sigma = sigma_phi(s);
    report.merge(check_module_property(s, sigma, cutoff));

    const ManifoldModel& m = f.fiber.model;
    const H2Lattice& lat = m.h2;
    for (std::size_t g = 0; g < lat.rank(); ++g) {
        const NovKey A = lat.key(unit_vec(lat.rank(), g));
        const SectionClass shifted{sigma.offset + A};
        // Psi(sigma + A) carries the extra factor e^{A}; compare at the
        // cutoff both sides are known to.
        const Rational c = cutoff - std::max<Rational>(A.omega, 0);
        for (std::size_t i = 0; i < m.dim(); ++i) {
            const QHClass a = QHClass::basis(m.dim(), i);
            try {
                const QHClass lhs = psi(s, shifted, a, c).truncated(c);
                const QHClass rhs = psi(s, sigma, a, c + A.omega).shifted(A).truncated(c);
                report.expect_equal("psi shift", m.basis[i].label + " by " + lat.names()[g], lhs, rhs,
                                    [&](const QHClass& q) { return format_class(m, q); });
            } catch (const TableIncomplete& e) {
                report.skip("psi shift", m.basis[i].label + " by " + lat.names()[g], e.what());
            }
        }
    }
    return report;
}

VerificationReport check_compose_suite(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    const SeidelData s = seidel_data(f);
    const SeidelData inverse = mirror(s, cutoff);
    const CompositionResult result = compose(s, inverse, cutoff);
    report.merge(result.report);

    const ManifoldModel& m = f.fiber.model;
    const SectionClass sigma = sigma_phi(result.composite);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const QHClass a = QHClass::basis(m.dim(), i);
        try {
            const QHClass lhs = psi(result.composite, sigma, a, cutoff).truncated(cutoff);
            report.expect_equal("inverse loop", m.basis[i].label, lhs, a,
                                [&](const QHClass& q) { return format_class(m, q); });
        } catch (const TableIncomplete& e) {
            report.skip("inverse loop", m.basis[i].label, e.what());
        }
    }
    return report;
}

VerificationReport check_invariants_suite(const FibrationModel& f) {
    VerificationReport report;
    const Rational ic = invariant_Ic(f);
    const H2Lattice& lat = f.fiber.model.h2;
    const long N = f.fiber.model.N;
    for (std::size_t g = 0; g < lat.rank(); ++g) {
        if (!lat.spherical()[g]) continue;
        Rational c = f.c_ref() + lat.c1()[g];
        if (N != 0) {
            mpz_class r = c.get_num() % mpz_class(N);
            if (r < 0) r += N;
            c = Rational(r);
        }
        report.expect_equal("Ic section independence", lat.names()[g], c, ic);
    }
    const Vec iu = invariant_Iu(f);
    report.expect_true("Iu computed", format_Iu(f, iu), true);
    return report;
}

VerificationReport check_splitting_suite(const FibrationModel& f) {
    VerificationReport report;
    try {
        report.merge(check_splitting(f, correct_splitting(f)));
    } catch (const PrimingInvalid& e) {
        report.record("primed splitting", "", e.what(), "dual to iota", false);
    }
    return report;
}

VerificationReport check_rho_suite(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    const ManifoldModel& m = f.fiber.model;
    const QHClass r = rho(f, cutoff);
    const auto inverse = is_unit(f.fiber, r, cutoff);
    report.expect_true("rho is a unit", format_class(m, r), inverse.has_value());
    if (inverse) {
        const Rational c = cutoff - *r.max_energy();
        const QHClass prod = quantum_product(f.fiber, r, *inverse, cutoff).truncated(c);
        const QHClass one = QHClass::basis(m.dim(), m.fundamental);
        report.expect_equal("rho inverse", format_class(m, *inverse), prod, one,
                            [&](const QHClass& q) { return format_class(m, q); });
    }
    const RhoShape shape = rho_shape_check(m, r);
    report.record("rho shape", format_class(m, r), shape_name(shape.kind), shape_name(shape.kind), true);
    return report;
}

VerificationReport check_ring_split_suite(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    try {
        report.merge(ring_split_check(f, cutoff).report);
    } catch (const HypothesisFailed& e) {
        report.skip("ring split", "", std::string("hypothesis fails: ") + e.what());
    }
    return report;
}

ClassOf total_class_of(const FibrationModel& f, bool section) {
    return [&f, section](const NovKey& key) {
        return section ? f.section_class_in_total(key) : f.fiber_class_in_total(key);
    };
}

VerificationReport check_total_axioms(const FibrationModel& f) {
    VerificationReport report;
    report.merge(validate_gw_axioms(f.gw_fiber, f.total, total_class_of(f, false)));
    report.merge(validate_gw_axioms(f.gw_section, f.total, total_class_of(f, true)));
    return report;
}

bool is_fiber_suite(const std::string& s) {
    return std::find(kFiberSuites.begin(), kFiberSuites.end(), s) != kFiberSuites.end();
}

bool is_fibration_suite(const std::string& s) {
    return std::find(kFibrationSuites.begin(), kFibrationSuites.end(), s) != kFibrationSuites.end();
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out = kFiberSuites;
        out.insert(out.end(), kFibrationSuites.begin(), kFibrationSuites.end());
        out.push_back("all");
        return out;
    }();
    return names;
}

VerificationReport check_model(const ManifoldModel& m) {
    VerificationReport report;
    const std::size_t d = m.dim();
    const auto duals = dual_basis(m);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            report.expect_equal("dual basis", pair_label(m, i, j), intersect(m, unit_vec(d, i), duals[j]),
                                Rational(i == j ? 1 : 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            report.expect_equal("pairing symmetry", pair_label(m, i, j), m.pairing(i, j),
                                Rational(koszul_sign(m.basis[i].degree, m.basis[j].degree)) * m.pairing(j, i));
    if (m.has_triple) {
        auto codim = [&](std::size_t i) { return 2 * m.n - m.basis[i].degree; };
        const auto fmt = [&](const Vec& v) { return vec_text(m, v); };
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const Vec lhs = m.cap[i][j];
                Vec rhs = zero_vec(d);
                axpy(rhs, koszul_sign(codim(i), codim(j)), m.cap[j][i]);
                report.expect_equal("cap commutativity", pair_label(m, i, j), lhs, rhs, fmt);
                if (m.basis[i].degree + m.basis[j].degree == 2 * m.n) {
                    const Rational point = m.cap[i][j][m.point];
                    report.expect_equal("cap normalization", pair_label(m, i, j), point, m.pairing(i, j));
                }
            }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    const Vec lhs = cap(m, m.cap[i][j], unit_vec(d, k));
                    const Vec rhs = cap(m, unit_vec(d, i), m.cap[j][k]);
                    report.expect_equal("cap associativity",
                                        "(" + m.basis[i].label + ", " + m.basis[j].label + ", " + m.basis[k].label + ")",
                                        lhs, rhs, fmt);
                }
    } else {
        report.skip("cap associativity", "", "no triple data");
    }
    for (std::size_t g = 0; g < m.h2.rank(); ++g) {
        if (!m.h2.spherical()[g]) continue;
        const Rational c = m.h2.c1()[g];
        const bool divisible = m.N == 0 ? c == 0 : is_integer(c / m.N);
        report.expect_true("minimal Chern divisibility", m.h2.names()[g], divisible, to_string(c));
    }
    return report;
}

VerificationReport check_quantum_laws(const QuantumManifold& qm, const Rational& cutoff) {
    VerificationReport report;
    const ManifoldModel& m = qm.model;
    const std::size_t d = m.dim();
    const auto fmt = [&](const QHClass& q) { return format_class(m, q); };
    const ProductEngine engine(m, qm.gw, true);
    for (std::size_t i = 0; i < d; ++i) {
        const QHClass unit = engine.multiply_basis(m.fundamental, i, cutoff);
        report.expect_equal("unit law", m.basis[i].label, unit, QHClass::basis(d, i), fmt);
        for (std::size_t j = 0; j < d; ++j) {
            const QHClass ab = engine.multiply_basis(i, j, cutoff);
            const QHClass ba = engine.multiply_basis(j, i, cutoff)
                                   .scaled(koszul_sign(m.basis[i].degree, m.basis[j].degree));
            report.expect_equal("graded commutativity", pair_label(m, i, j), ab, ba, fmt);
            const Rational expected = m.basis[i].degree + m.basis[j].degree - 2 * m.n;
            bool homogeneous = true;
            for (const auto& deg : term_degrees(m, ab)) homogeneous = homogeneous && deg == expected;
            report.expect_true("degree law", pair_label(m, i, j), homogeneous, fmt(ab));
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        const QHClass q = QHClass::basis(d, i);
        const auto inverse = is_unit(qm, q, cutoff);
        if (!inverse) continue;
        const QHClass prod = quantum_product(qm, q, *inverse, cutoff).truncated(cutoff);
        report.expect_equal("unit inverse", m.basis[i].label, prod, QHClass::basis(d, m.fundamental), fmt);
    }
    return report;
}

VerificationReport run_suite(const QuantumManifold& target, const std::string& suite, const Rational& cutoff) {
    if (cutoff < 0) throw CutoffTooSmall("cutoff must be nonnegative");
    const Level level = target.gw.complete_below();
    if (suite == "all") {
        VerificationReport all;
        for (const auto& s : kFiberSuites) all.merge(run_suite(target, s, cutoff));
        all.suite = "all";
        all.cutoff = cutoff;
        all.table_completeness = level;
        return all;
    }
    if (suite == "model") return guarded_suite(suite, cutoff, level, [&] { return check_model(target.model); });
    if (suite == "quantum")
        return guarded_suite(suite, cutoff, level, [&] { return check_quantum_laws(target, cutoff); });
    if (suite == "assoc")
        return guarded_suite(suite, cutoff, level, [&] { return verify_associativity(target, cutoff); });
    if (suite == "axioms")
        return guarded_suite(suite, cutoff, level, [&] { return validate_gw_axioms(target.gw, target.model); });
    if (is_fibration_suite(suite)) throw UnknownSuite("suite '" + suite + "' needs a fibration fixture");
    throw UnknownSuite("unknown suite '" + suite + "'");
}

VerificationReport run_suite(const FibrationModel& f, const std::string& suite, const Rational& cutoff) {
    if (cutoff < 0) throw CutoffTooSmall("cutoff must be nonnegative");
    if (suite == "all") {
        VerificationReport all;
        for (const auto& s : kFiberSuites) all.merge(run_suite(f, s, cutoff));
        const bool product = is_product_bundle(f);
        for (const auto& s : kFibrationSuites)
            if (s != "product" || product) all.merge(run_suite(f, s, cutoff));
        all.suite = "all";
        all.cutoff = cutoff;
        all.table_completeness = f.gw_section.complete_below();
        return all;
    }
    if (suite == "axioms") {
        return guarded_suite(suite, cutoff, f.gw_section.complete_below(), [&] {
            VerificationReport r = validate_gw_axioms(f.fiber.gw, f.fiber.model);
            r.merge(check_total_axioms(f));
            return r;
        });
    }
    if (is_fiber_suite(suite)) return run_suite(f.fiber, suite, cutoff);
    const Level level = f.gw_section.complete_below();
    if (suite == "prop-gw") return guarded_suite(suite, cutoff, level, [&] { return verify_prop_gw(f, cutoff); });
    if (suite == "wang") return guarded_suite(suite, cutoff, level, [&] { return quantum_wang_check(f, cutoff); });
    if (suite == "module") return guarded_suite(suite, cutoff, level, [&] { return check_module_suite(f, cutoff); });
    if (suite == "compose")
        return guarded_suite(suite, cutoff, level, [&] { return check_compose_suite(f, cutoff); });
    if (suite == "splitting") return guarded_suite(suite, cutoff, level, [&] { return check_splitting_suite(f); });
    if (suite == "invariants") return guarded_suite(suite, cutoff, level, [&] { return check_invariants_suite(f); });
    if (suite == "ring-split")
        return guarded_suite(suite, cutoff, level, [&] { return check_ring_split_suite(f, cutoff); });
    if (suite == "rho") return guarded_suite(suite, cutoff, level, [&] { return check_rho_suite(f, cutoff); });
    if (suite == "product")
        return guarded_suite(suite, cutoff, level, [&] { return verify_product_formula(f, cutoff); });
    throw UnknownSuite("unknown suite '" + suite + "'");
}

} // namespace qhfib
