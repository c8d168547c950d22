#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"
#include "qhfib/fibration.hpp"

#include <algorithm>

namespace qhfib {

Matrix correct_splitting(const FibrationModel& f) {
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    const std::vector<Vec> duals = dual_basis(m);
    std::vector<Vec> iota_dual(d), primed(d);
    for (std::size_t j = 0; j < d; ++j) {
        iota_dual[j] = f.iota * duals[j];
        primed[j] = f.splitting.column(j);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Rational v = intersect(f.total, primed[i], iota_dual[j]);
            if (v != (i == j ? 1 : 0))
                throw PrimingInvalid("s'(" + m.basis[i].label + ") . iota(f_" + m.basis[j].label + ") = " +
                                     to_string(v) + ", expected " + (i == j ? "1" : "0"));
        }

    // With q_ik = s'(e_i) . s'(e_k), subtracting c_ik iota(f_k) from s'(e_i)
    // leaves s(e_i) . s(e_k) = q_ik - c_ki - (-1)^{d_k} c_ik. Classes above
    // the middle degree n - 1 absorb the whole correction, middle classes half.
    const int middle = m.n - 1;
    Matrix s = f.splitting;
    for (std::size_t i = 0; i < d; ++i) {
        const int di = m.basis[i].degree;
        if (di < middle) continue;
        Vec col = primed[i];
        for (std::size_t k = 0; k < d; ++k) {
            const Rational q = intersect(f.total, primed[i], primed[k]);
            if (q == 0) continue;
            Rational c = (m.basis[k].degree % 2 == 0 ? 1 : -1) * q;
            if (di == middle) c /= 2;
            axpy(col, -c, iota_dual[k]);
        }
        s.set_column(i, col);
    }
    return s;
}

VerificationReport check_splitting(const FibrationModel& f, const Matrix& s) {
    VerificationReport report;
    report.suite = "splitting";
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    const auto labels = m.labels();
    const std::vector<Vec> duals = dual_basis(m);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const std::string inst = "(" + labels[i] + ", " + labels[j] + ")";
            const Vec sf = s * duals[j];
            report.expect_equal("iota(e_i) . s(f_j) = delta", inst, intersect(f.total, f.iota.column(i), sf),
                                Rational(i == j ? 1 : 0));
            report.expect_equal("s(e_i) . s(f_j) = 0", inst, intersect(f.total, s.column(i), sf), Rational(0));
            report.expect_equal("s(a) . iota(b) = a . b", inst, intersect(f.total, s.column(i), f.iota.column(j)),
                                m.pairing(i, j));
        }
    return report;
}

std::string split_mode_name(SplitMode mode) {
    switch (mode) {
    case SplitMode::vertical: return "vertical";
    case SplitMode::horizontal_unit: return "horizontal-unit";
    case SplitMode::monomial_rho: return "monomial-rho";
    }
    return "vertical";
}

RingSplitResult ring_split_check(const FibrationModel& f, const Rational& cutoff, SplitMode mode) {
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    const std::size_t t = f.total.dim();
    const auto fl = m.labels();
    const auto tl = f.total.labels();
    RingSplitResult r;
    r.mode = split_mode_name(mode);
    auto& report = r.report;
    report.suite = "ring-split";
    report.cutoff = cutoff;
    report.table_completeness = f.gw_section.complete_below();

    auto vertical_offenders = [&](const std::vector<std::size_t>& arities) {
        std::vector<std::string> bad;
        for (std::size_t arity : arities)
            for (const auto& e : f.gw_fiber.entries(arity))
                if (!e.key.is_zero()) bad.push_back(f.gw_fiber.describe(e, tl));
        return bad;
    };

    const SectionClass sphi = sigma_phi(f);
    const Vec fiber_class = f.iota.column(m.fundamental);
    QHClass rho_value(d);
    switch (mode) {
    case SplitMode::vertical: {
        auto bad = vertical_offenders(f.gw_fiber.arities());
        if (!bad.empty()) throw HypothesisFailed("vertical invariants in nonzero classes do not vanish", bad);
        rho_value = rho(f, cutoff);
        r.shape = rho_shape_check(m, rho_value);
        if (r.shape.mu == 0)
            throw HypothesisFailed("rho(phi) has no [M] component", {format_class(m, rho_value)});
        r.mu = r.shape.mu;
        r.sigma_A = {sphi.offset + r.shape.A};
        break;
    }
    case SplitMode::horizontal_unit: {
        const QHClass mm = horizontal_product(f, QHClass::from_vec(fiber_class), QHClass::from_vec(fiber_class),
                                              sphi, cutoff);
        const std::size_t top = f.total.fundamental;
        const bool shaped = mm.terms().size() == 1 && [&] {
            Vec v = mm.terms().begin()->second;
            const Rational mu = v[top];
            v[top] = 0;
            return mu != 0 && is_zero(v);
        }();
        if (!shaped)
            throw HypothesisFailed("[M] *H [M] is not a multiple of [P] e^{-A}", {format_class(tl, m.h2, mm)});
        r.mu = mm.terms().begin()->second[top];
        r.sigma_A = {sphi.offset - mm.terms().begin()->first};
        rho_value = rho(f, cutoff);
        r.shape = rho_shape_check(m, rho_value);
        break;
    }
    case SplitMode::monomial_rho: {
        auto bad = vertical_offenders({3});
        if (!bad.empty()) throw HypothesisFailed("vertical three-point invariants do not vanish", bad);
        rho_value = rho(f, cutoff);
        r.shape = rho_shape_check(m, rho_value);
        if (r.shape.kind != RhoShape::Kind::monomial_scalar)
            throw HypothesisFailed("rho(phi) is not of the form mu 1 e^{-A}", {format_class(m, rho_value)});
        r.mu = r.shape.mu;
        r.sigma_A = {sphi.offset + r.shape.A};
        break;
    }
    }

    // s_A(a) . v = (1/mu) n_P(iota a, [M], v; sigma_A)
    r.s_A = Matrix(t, d);
    for (std::size_t a = 0; a < d; ++a) {
        Vec values(t);
        for (std::size_t v = 0; v < t; ++v)
            values[v] = f.gw_section.evaluate({f.iota.column(a), fiber_class, unit_vec(t, v)}, r.sigma_A.offset) / r.mu;
        r.s_A.set_column(a, f.total.left_dual_expand(values));
    }

    for (std::size_t a = 0; a < d; ++a) {
        const Vec restricted = restrict_to_fiber(f, r.s_A.column(a));
        report.expect_equal("s_A(a) cap [M] = a", fl[a], restricted, unit_vec(d, a),
                            [&](const Vec& v) { return format_vec(fl, v); });
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            report.expect_equal("s_A(a) . s_A(b) = 0", "(" + fl[a] + ", " + fl[b] + ")",
                                intersect(f.total, r.s_A.column(a), r.s_A.column(b)), Rational(0));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const Vec ab = cap(f.total, r.s_A.column(a), r.s_A.column(b));
            for (std::size_t c = 0; c < d; ++c)
                report.expect_equal("(s_A(a) cap s_A(b)) . s_A(c) = 0", "(" + fl[a] + ", " + fl[b] + ", " + fl[c] + ")",
                                    intersect(f.total, ab, r.s_A.column(c)), Rational(0));
        }

    // mu s_A(a) . s_A(b) against the splitting of n_chi(s_A a, s_A b, [M], [M]; sigma_A)
    // into a section part and a vertical part.
    const Matrix s = correct_splitting(f);
    const std::vector<Vec> duals = dual_basis(m);
    std::vector<NovKey> bkeys{NovKey{}};
    for (const auto& k : f.gw_fiber.keys(3))
        if (!k.is_zero()) bkeys.push_back(k);
    auto vertical3 = [&](const Vec& x, const Vec& y, const Vec& z, const NovKey& key) {
        if (key.is_zero()) return intersect(f.total, cap(f.total, x, y), z);
        return f.gw_fiber.evaluate({x, y, z}, key);
    };
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const Vec sa = r.s_A.column(a);
            const Vec sb = r.s_A.column(b);
            Rational decomposition;
            for (const auto& key : bkeys) {
                const NovKey rest = r.sigma_A.offset - key;
                for (std::size_t i = 0; i < d; ++i) {
                    const Rational n1 = f.gw_section.evaluate({fiber_class, fiber_class, f.iota.column(i)}, rest);
                    if (n1 != 0) decomposition += n1 * vertical3(s * duals[i], sa, sb, key);
                    const Rational n2 = f.gw_section.evaluate({fiber_class, fiber_class, s.column(i)}, rest);
                    if (n2 != 0) decomposition += n2 * vertical3(f.iota * duals[i], sa, sb, key);
                }
            }
            const std::string inst = "(" + fl[a] + ", " + fl[b] + ")";
            report.expect_equal("mu s_A(a) . s_A(b) = chi splitting", inst,
                                r.mu * intersect(f.total, sa, sb), decomposition);
            if (f.gw_section.has(4) && f.gw_section.covers(r.sigma_A.offset))
                report.expect_equal("mu s_A(a) . s_A(b) = n_chi", inst, r.mu * intersect(f.total, sa, sb),
                                    f.gw_section.evaluate({sa, sb, fiber_class, fiber_class}, r.sigma_A.offset));
        }

    r.Ic = invariant_Ic(f);
    r.Iu = invariant_Iu(f);
    report.expect_equal("Ic = 0", "", r.Ic, Rational(0));
    report.expect_true("Iu = 0", format_Iu(f, r.Iu), is_zero(r.Iu));
    report.expect_true("rho = mu 1 + QH+", format_class(m, rho_value),
                       r.shape.kind != RhoShape::Kind::other);
    r.splits = report.ok();
    return r;
}

} // namespace qhfib
