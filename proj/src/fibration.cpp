#include "qhfib/fibration.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"

#include <algorithm>

namespace qhfib {

namespace {

std::string tuple_label(const std::vector<std::string>& labels, const std::vector<std::size_t>& idx) {
    std::string out = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? ", " : "") + labels[idx[i]];
    return out + ")";
}

std::vector<NovKey> merged_keys(std::vector<NovKey> a, const std::vector<NovKey>& b) {
    for (const auto& k : b)
        if (std::find(a.begin(), a.end(), k) == a.end()) a.push_back(k);
    std::sort(a.begin(), a.end(), [](const NovKey& x, const NovKey& y) {
        return x.omega != y.omega ? x.omega < y.omega : x.chern < y.chern;
    });
    return a;
}

// Three-point vertical invariant, the zero class being the triple product.
Rational vertical3(const FibrationModel& f, const Vec& x, const Vec& y, const Vec& z, const NovKey& key) {
    if (key.is_zero()) return intersect(f.total, cap(f.total, x, y), z);
    return f.gw_fiber.evaluate({x, y, z}, key);
}

Rational fiber3(const QuantumManifold& m, const Vec& x, const Vec& y, const Vec& z, const NovKey& key) {
    if (key.is_zero()) return intersect(m.model, cap(m.model, x, y), z);
    return m.gw.evaluate({x, y, z}, key);
}

} // namespace

void FibrationModel::finalize() {
    const std::size_t d = fiber.model.dim();
    const std::size_t t = total.dim();
    if (total.n != fiber.model.n + 1) throw ParseError("total space must have dimension 2n + 2");
    if (iota.rows() != t || iota.cols() != d) throw ParseError("iota has the wrong shape");
    if (splitting.rows() != t || splitting.cols() != d) throw ParseError("splitting has the wrong shape");
    if (u_phi.size() != t || c_phi.size() != t || sigma_ref.size() != t)
        throw ParseError("u_phi, c_phi and sigma_ref must be given over the total basis");
    const Vec fiber_class = iota.column(fiber.model.fundamental);
    if (intersect(total, sigma_ref, fiber_class) != 1) throw ParseError("sigma_ref . [M] must equal 1");
    for (auto* table : {&gw_fiber, &gw_section})
        if (table->degrees().size() != t) throw ParseError("fibration GW tables must use the total basis");
    gw_fiber.set_energy_offset(0);
    gw_fiber.set_chern_offset(0);
    gw_fiber.set_section_classes(false);
    gw_section.set_energy_offset(u_ref());
    gw_section.set_chern_offset(c_ref() + 2);
    gw_section.set_section_classes(true);
    if (sigma_label.empty()) sigma_label = format_vec(total.labels(), sigma_ref);
}

Vec FibrationModel::fiber_class_in_total(const NovKey& key) const {
    return iota * fiber.model.h2_class(fiber.model.h2.representative(key));
}

Vec FibrationModel::section_class_in_total(const NovKey& offset) const {
    Vec v = sigma_ref;
    axpy(v, 1, fiber_class_in_total(offset));
    return v;
}

Vec restrict_to_fiber(const FibrationModel& f, const Vec& v) {
    const Vec w = cap(f.total, v, f.iota.column(f.fiber.model.fundamental));
    auto x = solve(f.iota, w);
    if (!x || !(f.iota * *x == w))
        throw Inconsistent("v cap [M] is not in the image of iota for v = " + format_vec(f.total.labels(), v));
    return *x;
}

QHClass restrict_to_fiber(const FibrationModel& f, const QHClass& v) {
    QHClass out(f.fiber.model.dim());
    for (const auto& [k, vec] : v.terms()) out.add(k, restrict_to_fiber(f, vec));
    return out;
}

QHClass vertical_product(const FibrationModel& f, const QHClass& u, const QHClass& v, const Rational& cutoff) {
    return ProductEngine(f.total, f.gw_fiber, true).multiply(u, v, cutoff);
}

QHClass horizontal_product(const FibrationModel& f, const QHClass& u, const QHClass& v, const SectionClass& sigma,
                           const Rational& cutoff) {
    return ProductEngine(f.total, f.gw_section, false, sigma.offset).multiply(u, v, cutoff);
}

VerificationReport quantum_wang_check(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    report.suite = "wang";
    report.cutoff = cutoff;
    report.table_completeness = f.gw_fiber.complete_below();
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    const std::size_t t = f.total.dim();
    const auto fl = m.labels();
    const auto tl = f.total.labels();
    auto fmt_total = [&](const QHClass& q) { return format_class(tl, m.h2, q); };

    report.expect_equal("iota injective", "rank", Rational(rank(f.iota)), Rational(d));
    report.expect_equal("dimension count", "dim H(P) = 2 dim H(M)", Rational(t), Rational(2 * d));

    const Vec fiber_class = f.iota.column(m.fundamental);
    Matrix restriction(d, t);
    bool restriction_defined = true;
    for (std::size_t v = 0; v < t; ++v) {
        const Vec w = cap(f.total, unit_vec(t, v), fiber_class);
        auto x = solve(f.iota, w);
        const bool in_image = x && f.iota * *x == w;
        report.expect_true("cap [M] lands in image of iota", tl[v], in_image);
        if (!in_image) {
            restriction_defined = false;
            continue;
        }
        restriction.set_column(v, *x);
    }
    for (std::size_t a = 0; a < d; ++a)
        report.expect_true("cap [M] kills iota", fl[a], is_zero(cap(f.total, f.iota.column(a), fiber_class)));
    if (restriction_defined) {
        report.expect_equal("cap [M] surjective", "rank", Rational(rank(restriction)), Rational(d));
        for (std::size_t a = 0; a < d; ++a)
            report.expect_true("s(a) cap [M] = a", fl[a], restriction * f.splitting.column(a) == unit_vec(d, a));
    }

    const ProductEngine vertical(f.total, f.gw_fiber, true);
    const ProductEngine fiber_engine(m, f.fiber.gw, true);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const QHClass ia = QHClass::from_vec(f.iota.column(a));
            const QHClass ib = QHClass::from_vec(f.iota.column(b));
            const QHClass sa = QHClass::from_vec(f.splitting.column(a));
            const QHClass sb = QHClass::from_vec(f.splitting.column(b));
            const QHClass ab = fiber_engine.multiply_basis(a, b, cutoff);
            const std::string inst = tuple_label(fl, {a, b});
            report.expect_equal("iota(a) *V iota(b) = 0", inst, vertical.multiply(ia, ib, cutoff), QHClass(t),
                                fmt_total);
            report.expect_equal("s(a) *V iota(b) = iota(a * b)", inst, vertical.multiply(sa, ib, cutoff),
                                apply_linear(f.iota, ab), fmt_total);
            if (restriction_defined) {
                const QHClass lhs = apply_linear(restriction, vertical.multiply(sa, sb, cutoff));
                report.expect_equal("(s(a) *V s(b)) cap [M] = a * b", inst, lhs, ab,
                                    [&](const QHClass& q) { return format_class(m, q); });
            }
        }
    return report;
}

Rational chi_decomposition(const FibrationModel& f, const std::vector<Vec>& v, const NovKey& offset) {
    if (v.size() != 4) throw Error("four arguments are required");
    const std::size_t t = f.total.dim();
    std::vector<NovKey> vkeys = merged_keys({NovKey{}}, f.gw_fiber.keys(3));
    Rational total;
    for (std::size_t alpha = 0; alpha < t; ++alpha) {
        const Vec e = unit_vec(t, alpha);
        const Vec fa = f.total.left_dual_expand(e);
        for (const auto& b1 : vkeys) {
            const NovKey rest = offset - b1;
            const Rational v12 = vertical3(f, v[0], v[1], e, b1);
            if (v12 != 0) total += v12 * f.gw_section.evaluate({fa, v[2], v[3]}, rest);
            const Rational v34 = vertical3(f, fa, v[2], v[3], b1);
            if (v34 != 0) total += f.gw_section.evaluate({v[0], v[1], e}, rest) * v34;
        }
    }
    return total;
}

VerificationReport verify_prop_gw(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    report.suite = "prop-gw";
    report.cutoff = cutoff;
    report.table_completeness = f.gw_section.complete_below();
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    const std::size_t t = f.total.dim();
    const auto fl = m.labels();
    const auto tl = f.total.labels();
    const auto& lat = m.h2;
    auto iota = [&](std::size_t a) { return f.iota.column(a); };
    auto ev = [&](std::size_t v) { return unit_vec(t, v); };
    const Vec fiber_class = iota(m.fundamental);

    std::vector<Vec> restricted(t);
    bool restriction_ok = true;
    for (std::size_t v = 0; v < t; ++v) {
        try {
            restricted[v] = restrict_to_fiber(f, ev(v));
        } catch (const Inconsistent&) {
            restriction_ok = false;
        }
    }

    // Vertical classes: two fiber insertions kill the invariant, one restricts it to the fiber.
    if (!f.gw_fiber.has(3)) {
        report.skip("vertical vanishing", "", "no vertical three-point table");
    } else {
        for (const auto& key : f.gw_fiber.keys(3)) {
            if (key.is_zero() || key.omega > cutoff) continue;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b)
                    for (std::size_t v = 0; v < t; ++v)
                        report.expect_equal("vertical vanishing",
                                            "(" + fl[a] + ", " + fl[b] + ", " + tl[v] + ") in " + lat.format(key),
                                            f.gw_fiber.evaluate({iota(a), iota(b), ev(v)}, key), Rational(0));
        }
        if (!f.fiber.gw.has(3) || !restriction_ok) {
            report.skip("vertical restriction", "", "fiber table or restriction map unavailable");
        } else {
            for (const auto& key : merged_keys(f.gw_fiber.keys(3), f.fiber.gw.keys(3))) {
                if (key.is_zero() || key.omega > cutoff) continue;
                if (!f.gw_fiber.covers(key) || !f.fiber.gw.covers(key)) {
                    report.skip("vertical restriction", lat.format(key), "class beyond table completeness");
                    continue;
                }
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t v = 0; v < t; ++v)
                        for (std::size_t w = v; w < t; ++w)
                            report.expect_equal(
                                "vertical restriction",
                                "(" + fl[a] + ", " + tl[v] + ", " + tl[w] + ") in " + lat.format(key),
                                f.gw_fiber.evaluate({iota(a), ev(v), ev(w)}, key),
                                f.fiber.gw.evaluate({unit_vec(d, a), restricted[v], restricted[w]}, key));
            }
        }
    }

    // Fixed cross-ratio invariants of section classes.
    if (!f.gw_section.has(3) || !f.gw_section.has(4) || !restriction_ok) {
        report.skip("section cross-ratio", "", "section three- and four-point tables required");
    } else {
        for (const auto& key : merged_keys(f.gw_section.keys(3), f.gw_section.keys(4))) {
            if (!f.gw_section.covers(key)) {
                report.skip("section cross-ratio", lat.format(key), "class beyond table completeness");
                continue;
            }
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b)
                    for (std::size_t v = 0; v < t; ++v)
                        report.expect_equal(
                            "section cross-ratio",
                            "(" + fl[a] + ", " + fl[b] + ", " + tl[v] + ") in " + f.sigma_label + " + " +
                                lat.format(key),
                            f.gw_section.evaluate({iota(a), iota(b), f.iota * restricted[v]}, key),
                            f.gw_section.evaluate({iota(a), iota(b), ev(v), fiber_class}, key));
        }
    }

    // Section invariants with two fiber insertions split along the fiber.
    if (!f.gw_section.has(3) || !f.fiber.gw.has(3) || !restriction_ok) {
        report.skip("section splitting", "", "section and fiber three-point tables required");
        return report;
    }
    const std::vector<Vec> duals = dual_basis(m);
    const std::vector<NovKey> bkeys = merged_keys({NovKey{}}, f.fiber.gw.keys(3));
    std::vector<NovKey> skeys = f.gw_section.keys(3);
    for (const auto& k : f.gw_section.keys(3))
        for (const auto& b : bkeys) skeys = merged_keys(skeys, {k + b});
    const Rational section_floor = f.gw_section.min_class_energy().value_or(f.u_ref());

    // Free four-point fiber invariant from the fundamental class, dimension
    // and divisor axioms; nullopt when these do not determine it.
    auto fiber4 = [&](const Vec& x, const Vec& y, const Vec& z, const Vec& w,
                      const NovKey& key) -> std::optional<Rational> {
        if (key.is_zero()) return Rational(0);
        std::vector<Vec> args{x, y, z, w};
        std::vector<std::vector<std::size_t>> parts(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (args[i][j] != 0) parts[i].push_back(j);
        for (const auto& p : parts)
            if (p.empty()) return Rational(0);
        Rational total;
        std::vector<std::size_t> pos(4, 0);
        while (true) {
            std::vector<std::size_t> idx(4);
            Rational coef = 1;
            Rational codim = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                idx[i] = parts[i][pos[i]];
                coef *= args[i][idx[i]];
                codim += 2 * m.n - m.basis[idx[i]].degree;
            }
            const bool has_fundamental = std::find(idx.begin(), idx.end(), m.fundamental) != idx.end();
            if (!has_fundamental && codim == 2 * m.n + 2 * key.chern + 2) {
                auto div = std::find_if(idx.begin(), idx.end(),
                                        [&](std::size_t i) { return m.basis[i].degree == 2 * m.n - 2; });
                if (div == idx.end()) return std::nullopt;
                const Rational db = intersect(m, unit_vec(d, *div), m.h2_class(lat.representative(key)));
                std::vector<std::size_t> rest;
                for (auto it = idx.begin(); it != idx.end(); ++it)
                    if (it != div) rest.push_back(*it);
                total += coef * db * f.fiber.gw.lookup(rest, key);
            }
            std::size_t i = 0;
            while (i < 4 && ++pos[i] == parts[i].size()) pos[i++] = 0;
            if (i == 4) break;
        }
        return total;
    };

    for (const auto& key : skeys) {
        if (!f.gw_section.covers(key)) continue;
        const Rational fiber_budget = f.gw_section.class_energy(key) - section_floor;
        if (!level_covers(f.fiber.gw.complete_below(), fiber_budget)) {
            report.skip("section splitting", lat.format(key), "fiber table not complete enough");
            continue;
        }
        for (std::size_t v = 0; v < t; ++v)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b) {
                    const std::string inst =
                        "(" + tl[v] + ", " + fl[a] + ", " + fl[b] + ") in " + f.sigma_label + " + " + lat.format(key);
                    const Rational lhs = f.gw_section.evaluate({ev(v), iota(a), iota(b)}, key);
                    Rational rhs;
                    bool determined = true;
                    for (const auto& bk : bkeys) {
                        const NovKey rest = key - bk;
                        if (!f.gw_section.covers(rest) || bk.omega > fiber_budget) continue;
                        for (std::size_t i = 0; i < d; ++i) {
                            const Rational first = f.gw_section.evaluate({ev(v), fiber_class, iota(i)}, rest);
                            if (first != 0)
                                rhs += first * fiber3(f.fiber, duals[i], unit_vec(d, a), unit_vec(d, b), bk);
                            const Rational second = f.gw_section.evaluate({fiber_class, fiber_class, iota(i)}, rest);
                            if (second != 0) {
                                auto n4 = fiber4(duals[i], restricted[v], unit_vec(d, a), unit_vec(d, b), bk);
                                if (!n4) determined = false;
                                else rhs += second * *n4;
                            }
                        }
                    }
                    if (!determined) report.skip("section splitting", inst, "free four-point fiber invariant");
                    else report.expect_equal("section splitting", inst, lhs, rhs);
                }
    }
    return report;
}

Rational invariant_Ic(const FibrationModel& f) {
    const Rational c = f.c_ref();
    const long n = f.fiber.model.N;
    if (n == 0) return c;
    const mpz_class modulus(n);
    if (!is_integer(c)) throw Inconsistent("c_phi(sigma_ref) is not an integer");
    mpz_class r = c.get_num() % modulus;
    if (r < 0) r += modulus;
    return Rational(r);
}

namespace {

Vec cap_power(const FibrationModel& f, const std::vector<const Vec*>& factors) {
    Vec acc = unit_vec(f.total.dim(), f.total.fundamental);
    for (const Vec* p : factors) acc = cap(f.total, acc, *p);
    return acc;
}

} // namespace

Vec invariant_Iu(const FibrationModel& f) {
    const Vec pd_u = poincare_dual_pairing(f.u_phi, f.total);
    const std::vector<const Vec*> factors(static_cast<std::size_t>(f.fiber.model.n), &pd_u);
    Vec cls = cap_power(f, factors);
    for (std::size_t g = 0; g < f.total.h2.rank(); ++g)
        if (f.total.h2.spherical()[g]) cls[f.total.index(f.total.h2.names()[g])] = 0;
    return cls;
}

std::string format_Iu(const FibrationModel& f, const Vec& iu) {
    std::string out;
    const auto labels = f.total.labels();
    for (std::size_t i = 0; i < iu.size(); ++i) {
        if (iu[i] == 0) continue;
        std::string coef;
        if (iu[i] == -1) coef = "-";
        else if (iu[i] != 1) coef = is_integer(iu[i]) ? to_string(iu[i]) : "(" + to_string(iu[i]) + ")";
        if (!out.empty()) out += " + ";
        out += coef + labels[i];
    }
    return out.empty() ? "0" : out;
}

Rational invariant_Ik(const FibrationModel& f, int k) {
    const int n = f.fiber.model.n;
    if (k < 0 || k > n + 1) throw ParseError("k must lie between 0 and n + 1");
    const Vec pd_u = poincare_dual_pairing(f.u_phi, f.total);
    const Vec pd_c = poincare_dual_pairing(f.c_phi, f.total);
    std::vector<const Vec*> factors;
    for (int i = 0; i < k; ++i) factors.push_back(&pd_c);
    for (int i = k; i < n + 1; ++i) factors.push_back(&pd_u);
    const Vec point_class = cap_power(f, factors);
    return intersect(f.total, point_class, unit_vec(f.total.dim(), f.total.fundamental));
}

NonsqueezingResult nonsqueezing_bound(const FibrationModel& f, const Rational& kappa, const Rational& cutoff) {
    (void)cutoff;
    const SectionClass s = sigma_phi(f);
    const Vec fiber_class = f.iota.column(f.fiber.model.fundamental);
    const Vec point = unit_vec(f.total.dim(), f.total.point);
    NonsqueezingResult r;
    r.invariant = f.gw_section.evaluate({fiber_class, fiber_class, point}, s.offset);
    if (r.invariant != 0) {
        r.bound = kappa;
        r.reason = "n_P([M], [M], [pt]; sigma_phi) = " + to_string(r.invariant);
    } else {
        r.reason = "invariant vanishes";
    }
    return r;
}

} // namespace qhfib
