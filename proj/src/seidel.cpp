#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"
#include "qhfib/fibration.hpp"

#include <algorithm>

namespace qhfib {

std::string SeidelData::format(const SectionClass& s) const {
    if (s.offset.is_zero()) return ref_label;
    const std::string off = fiber.model.h2.format(s.offset);
    if (off.front() == '-') return ref_label + " - " + off.substr(1);
    return ref_label + " + " + off;
}

SeidelData seidel_data(const FibrationModel& f) {
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    SeidelData s;
    s.fiber = f.fiber;
    s.ref_label = f.sigma_label;
    s.u_ref = f.u_ref();
    s.c_ref = f.c_ref();
    std::vector<int> degrees;
    for (const auto& b : m.basis) degrees.push_back(b.degree);
    s.table = GWTable(degrees, m.h2, f.gw_section.complete_below(), s.u_ref);
    s.table.set_chern_offset(s.c_ref + 2);
    s.table.set_section_classes(true);

    // n_P(iota a, iota b; sigma) equals n_P(iota a, iota b, [M]; sigma) by the
    // divisor axiom, since sigma . [M] = 1.
    const bool two = f.gw_section.has(2);
    if (!two && !f.gw_section.has(3)) return s;
    s.table.declare(2);
    const Vec fiber_class = f.iota.column(m.fundamental);
    for (const auto& key : f.gw_section.keys(two ? 2 : 3))
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b) {
                const Vec ia = f.iota.column(a);
                const Vec ib = f.iota.column(b);
                const Rational v = two ? f.gw_section.evaluate({ia, ib}, key)
                                       : f.gw_section.evaluate({ia, ib, fiber_class}, key);
                if (v != 0) s.table.add({a, b}, key, v);
            }
    return s;
}

namespace {

QHClass psi_basis(const SeidelData& s, const SectionClass& sigma, std::size_t i, const Rational& cutoff) {
    const auto& m = s.fiber.model;
    const std::size_t d = m.dim();
    // Terms e^{offset - K} with energy omega(K) - omega(offset) <= cutoff.
    s.table.require_energy(2, s.u(sigma) + cutoff);
    QHClass out(d);
    for (const auto& e : s.table.entries(2)) {
        if (e.key.omega - sigma.offset.omega > cutoff) continue;
        if (std::find(e.args.begin(), e.args.end(), i) == e.args.end()) continue;
        if (!s.table.dimension_rule(e.args, e.key, m.n + 1))
            throw DimensionRuleViolation("section invariant " + s.table.describe(e, m.labels()) +
                                         " violates 2 c(sigma) + dim a + dim b = 2n");
        const std::size_t j = e.args[0] == i ? e.args[1] : e.args[0];
        const Rational v = s.table.stored({i, j}, e.key);
        out.add(sigma.offset - e.key, m.left_dual_expand(unit_vec(d, j)), v);
    }
    return out;
}

} // namespace

QHClass psi(const SeidelData& s, const SectionClass& sigma, const QHClass& a, const Rational& cutoff) {
    const std::size_t d = s.fiber.model.dim();
    QHClass out(d);
    for (const auto& [key, v] : a.terms())
        for (std::size_t i = 0; i < d; ++i)
            if (v[i] != 0) out += psi_basis(s, sigma, i, cutoff - energy(key)).shifted(key).scaled(v[i]);
    return out.truncated(cutoff);
}

QHClass psi(const FibrationModel& f, const SectionClass& sigma, const QHClass& a, const Rational& cutoff) {
    return psi(seidel_data(f), sigma, a, cutoff);
}

QHClass q_sigma(const SeidelData& s, const SectionClass& sigma, const Rational& cutoff) {
    return psi(s, sigma, QHClass::basis(s.fiber.model.dim(), s.fiber.model.fundamental), cutoff);
}

VerificationReport check_module_property(const SeidelData& s, const SectionClass& sigma, const Rational& cutoff) {
    VerificationReport report;
    report.suite = "module";
    report.cutoff = cutoff;
    report.table_completeness = s.table.complete_below();
    const auto& m = s.fiber.model;
    const std::size_t d = m.dim();
    const auto labels = m.labels();
    const ProductEngine engine(m, s.fiber.gw, true);
    auto fmt = [&](const QHClass& q) { return format_class(m, q); };
    const QHClass q = q_sigma(s, sigma, cutoff);
    const Rational q_floor = std::min<Rational>(q.min_energy().value_or(0), 0);
    // Products with Q need Q beyond the cutoff when Q has negative energy terms.
    const QHClass q_wide = q_sigma(s, sigma, cutoff - q_floor);
    const std::string where = s.format(sigma);

    std::vector<QHClass> images(d);
    for (std::size_t a = 0; a < d; ++a) {
        images[a] = psi(s, sigma, QHClass::basis(d, a), cutoff - q_floor);
        report.expect_equal("Psi(a) = Q * a", labels[a] + " at " + where, images[a].truncated(cutoff),
                            engine.multiply(q_wide, QHClass::basis(d, a), cutoff), fmt);
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const QHClass lhs = psi(s, sigma, engine.multiply_basis(a, b, cutoff - q_floor), cutoff);
            const QHClass rhs = engine.multiply(images[a], QHClass::basis(d, b), cutoff);
            report.expect_equal("Psi(a * b) = Psi(a) * b", "(" + labels[a] + ", " + labels[b] + ") at " + where, lhs,
                                rhs, fmt);
        }
    return report;
}

SectionClass sigma_phi(const H2Lattice& lat, const Rational& u_ref, const Rational& c_ref) {
    const bool omega_zero = lat.omega_vanishes_on_spherical();
    const bool chern_zero = lat.chern_vanishes_on_spherical();
    if (lat.spherical_rank() == 2) return {NovKey{-u_ref, -c_ref}};
    if (omega_zero && chern_zero) return {};
    for (std::size_t g = 0; g < lat.rank(); ++g) {
        if (!lat.spherical()[g]) continue;
        const Rational w = lat.omega()[g];
        const Rational c = lat.c1()[g];
        if (!omega_zero && w != 0) {
            Vec coords(lat.rank());
            coords[g] = -u_ref / w;
            return {lat.key(coords)};
        }
        if (omega_zero && c != 0) {
            Vec coords(lat.rank());
            coords[g] = -c_ref / c;
            return {lat.key(coords)};
        }
    }
    throw Inconsistent("no rational section class normalizes u and c");
}

SectionClass sigma_phi(const SeidelData& s) { return sigma_phi(s.fiber.model.h2, s.u_ref, s.c_ref); }
SectionClass sigma_phi(const FibrationModel& f) { return sigma_phi(f.fiber.model.h2, f.u_ref(), f.c_ref()); }

QHClass rho(const SeidelData& s, const Rational& cutoff) {
    const QHClass q = q_sigma(s, sigma_phi(s), cutoff);
    if (!is_unit(s.fiber, q, cutoff))
        throw NotInvertible("Q at sigma_phi is not a unit: " + format_class(s.fiber.model, q));
    return q;
}

QHClass rho(const FibrationModel& f, const Rational& cutoff) { return rho(seidel_data(f), cutoff); }

std::string shape_name(RhoShape::Kind kind) {
    switch (kind) {
    case RhoShape::Kind::monomial_scalar: return "monomial-scalar";
    case RhoShape::Kind::scalar_plus_qh_plus: return "scalar-plus-QH+";
    case RhoShape::Kind::other: return "other";
    }
    return "other";
}

RhoShape rho_shape_check(const ManifoldModel& m, const QHClass& q) {
    RhoShape shape;
    NovikovElement lambda;
    QHClass rest(m.dim());
    for (const auto& [k, v] : q.terms()) {
        lambda.add(k, v[m.fundamental]);
        Vec w = v;
        w[m.fundamental] = 0;
        rest.add(k, w);
    }
    if (lambda.is_zero()) return shape;
    const auto& [lead, coef] = *lambda.terms().begin();
    shape.mu = coef;
    shape.A = -lead;
    if (rest.is_zero() && lambda.terms().size() == 1) shape.kind = RhoShape::Kind::monomial_scalar;
    else if (in_qh_plus(m, rest)) shape.kind = RhoShape::Kind::scalar_plus_qh_plus;
    else shape = RhoShape{};
    return shape;
}

SeidelData compose_tables(const SeidelData& phi, const SeidelData& psi_data) {
    if (!(phi.fiber == psi_data.fiber)) throw FiberMismatch("composition needs the same fiber model");
    const auto& m = phi.fiber.model;
    const std::size_t d = m.dim();
    SeidelData out;
    out.fiber = phi.fiber;
    out.ref_label = phi.ref_label + "#" + psi_data.ref_label;
    out.u_ref = phi.u_ref + psi_data.u_ref;
    out.c_ref = phi.c_ref + psi_data.c_ref;

    // Complete up to min(L1 + m2, L2 + m1), where m is the lowest energy a
    // nonzero entry of the other table can have.
    auto floor_of = [](const SeidelData& s) -> Level {
        if (auto e = s.table.min_class_energy()) return *e;
        return s.table.complete_below();
    };
    auto add_levels = [](const Level& a, const Level& b) -> Level {
        if (!a || !b) return std::nullopt;
        return *a + *b;
    };
    auto min_level = [](const Level& a, const Level& b) -> Level {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    };
    const Level level = min_level(add_levels(phi.table.complete_below(), floor_of(psi_data)),
                                  add_levels(psi_data.table.complete_below(), floor_of(phi)));
    std::vector<int> degrees;
    for (const auto& b : m.basis) degrees.push_back(b.degree);
    out.table = GWTable(degrees, m.h2, level, out.u_ref);
    out.table.set_chern_offset(out.c_ref + 2);
    out.table.set_section_classes(true);
    if (!phi.table.has(2) || !psi_data.table.has(2)) return out;
    out.table.declare(2);

    // n(a, b; K1 + K2) = sum_i n_phi(a, e_i; K1) n_psi(x_i, b; K2), x_i . e_k = delta.
    std::vector<Vec> duals(d);
    for (std::size_t i = 0; i < d; ++i) duals[i] = m.left_dual_expand(unit_vec(d, i));
    const auto k1 = phi.table.keys(2);
    const auto k2 = psi_data.table.keys(2);
    for (const auto& a1 : k1)
        for (const auto& a2 : k2)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    Rational v;
                    for (std::size_t i = 0; i < d; ++i) {
                        const Rational n1 = phi.table.stored({a, i}, a1);
                        if (n1 == 0) continue;
                        v += n1 * psi_data.table.evaluate({duals[i], unit_vec(d, b)}, a2);
                    }
                    if (v != 0 && a <= b) out.table.add({a, b}, a1 + a2, v);
                }
    return out;
}

CompositionResult compose(const SeidelData& phi, const SeidelData& psi_data, const Rational& cutoff) {
    CompositionResult r;
    r.composite = compose_tables(phi, psi_data);
    auto& report = r.report;
    report.suite = "compose";
    report.cutoff = cutoff;
    report.table_completeness = r.composite.table.complete_below();
    const auto& m = phi.fiber.model;
    const std::size_t d = m.dim();
    const auto labels = m.labels();
    auto fmt = [&](const QHClass& q) { return format_class(m, q); };
    const SectionClass ref{};

    // Psi_psi lowers energies by at most -lo, so Psi_phi is needed that far.
    Rational lo = 0;
    for (const auto& k : psi_data.table.keys(2)) lo = std::min(lo, k.omega);
    for (std::size_t a = 0; a < d; ++a) {
        const QHClass first = psi(phi, ref, QHClass::basis(d, a), cutoff - lo);
        const QHClass lhs = psi(r.composite, ref, QHClass::basis(d, a), cutoff);
        const QHClass rhs = psi(psi_data, ref, first, cutoff);
        report.expect_equal("Psi composite = Psi_psi o Psi_phi", labels[a], lhs, rhs, fmt);
    }
    const SectionClass s1 = sigma_phi(phi);
    const SectionClass s2 = sigma_phi(psi_data);
    const SectionClass s12 = sigma_phi(r.composite);
    report.expect_equal("u additive", "reference sections", r.composite.u_ref, phi.u_ref + psi_data.u_ref);
    report.expect_equal("c additive", "reference sections", r.composite.c_ref, phi.c_ref + psi_data.c_ref);
    report.expect_equal("sigma_phi additive", "normalized sections", s12.offset.omega, s1.offset.omega + s2.offset.omega);
    report.expect_equal("sigma_phi additive", "normalized sections", s12.offset.chern, s1.offset.chern + s2.offset.chern);

    const QHClass r1 = q_sigma(phi, s1, cutoff);
    const QHClass r2 = q_sigma(psi_data, s2, cutoff);
    const Rational lo1 = std::min<Rational>(r1.min_energy().value_or(0), 0);
    const Rational lo2 = std::min<Rational>(r2.min_energy().value_or(0), 0);
    const QHClass r1w = q_sigma(phi, s1, cutoff - lo2);
    const QHClass r2w = q_sigma(psi_data, s2, cutoff - lo1);
    report.expect_equal("rho homomorphism", "rho(psi phi) = rho(psi) * rho(phi)", q_sigma(r.composite, s12, cutoff),
                        quantum_product(phi.fiber, r2w, r1w, cutoff), fmt);
    return r;
}

SeidelData mirror(const SeidelData& s, const Rational& cutoff) {
    const auto& m = s.fiber.model;
    const std::size_t d = m.dim();
    const Rational floor = s.table.min_class_energy().value_or(s.u_ref);
    const Rational precision = cutoff + std::max<Rational>(0, s.u_ref - floor);
    const QHClass q = q_sigma(s, SectionClass{}, precision);
    auto inv = is_unit(s.fiber, q, precision);
    if (!inv) throw NotInvertible("Psi at the reference section is not invertible");

    SeidelData out;
    out.fiber = s.fiber;
    out.ref_label = "-(" + s.ref_label + ")";
    out.u_ref = -s.u_ref;
    out.c_ref = -s.c_ref;
    std::vector<int> degrees;
    for (const auto& b : m.basis) degrees.push_back(b.degree);
    out.table = GWTable(degrees, m.h2, precision + out.u_ref, out.u_ref);
    out.table.set_chern_offset(out.c_ref + 2);
    out.table.set_section_classes(true);
    out.table.declare(2);
    const ProductEngine engine(m, s.fiber.gw, true);
    for (std::size_t a = 0; a < d; ++a) {
        const QHClass image = engine.multiply(*inv, QHClass::basis(d, a), precision);
        for (const auto& [x, v] : image.terms())
            for (std::size_t b = a; b < d; ++b) {
                const Rational val = intersect(m, v, unit_vec(d, b));
                if (val != 0) out.table.add({a, b}, -x, val);
            }
    }
    return out;
}

} // namespace qhfib
