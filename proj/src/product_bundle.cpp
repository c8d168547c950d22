#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"
#include "qhfib/fibration.hpp"

#include <algorithm>

namespace qhfib {

namespace {

// S^2 factor: index 0 is the point, index 1 the fundamental class.
Rational s2_pairing(std::size_t x, std::size_t y) { return x + y == 1 ? 1 : 0; }

Rational s2_triple(const std::vector<std::size_t>& xs) {
    return std::count(xs.begin(), xs.end(), std::size_t(0)) == 1 ? 1 : 0;
}

// Cap product x cap y in S^2 as (point coefficient, fundamental coefficient).
std::pair<Rational, Rational> s2_cap(std::size_t x, std::size_t y) {
    if (x == 1 && y == 1) return {0, 1};
    if (x + y == 1) return {1, 0};
    return {0, 0};
}

// Values of a lattice covector on the degree-2 basis classes.
Vec basis_covector(const ManifoldModel& m, const Vec& values) {
    Matrix a(m.h2.rank(), m.dim());
    for (std::size_t g = 0; g < m.h2.rank(); ++g)
        for (std::size_t x = 0; x < m.dim(); ++x)
            if (m.basis[x].degree == 2) a(g, x) = m.h2_classes[g][x];
    auto w = solve(a, values);
    if (!w || !(a * *w == values)) throw Inconsistent("H2 periods are not induced by degree-2 basis classes");
    return *w;
}

bool in_spherical_span(const ManifoldModel& m, std::size_t x) {
    std::vector<std::size_t> gens;
    for (std::size_t g = 0; g < m.h2.rank(); ++g)
        if (m.h2.spherical()[g]) gens.push_back(g);
    Matrix a(m.dim(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) a.set_column(j, m.h2_classes[gens[j]]);
    const Vec target = unit_vec(m.dim(), x);
    auto sol = solve(a, target);
    return sol && a * *sol == target;
}

void sorted_tuples(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (cur.size() == k) {
        fn(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        sorted_tuples(n, k, i, cur, fn);
        cur.pop_back();
    }
}

void for_sorted_tuples(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    sorted_tuples(n, k, 0, cur, fn);
}

} // namespace

FibrationModel product_fixture(const QuantumManifold& qm) {
    const ManifoldModel& m = qm.model;
    if (!m.has_triple) throw MissingTripleData("product bundle needs the triple intersections of the fiber");
    const std::size_t d = m.dim();
    const std::size_t t = 2 * d;
    auto fiber_part = [d](std::size_t i) { return i % d; };
    auto s2_part = [d](std::size_t i) { return i / d; };

    FibrationModel f;
    f.fiber = qm;
    ManifoldModel& p = f.total;
    p.name = m.name + " x S2";
    p.n = m.n + 1;
    for (std::size_t x = 0; x < 2; ++x)
        for (const auto& b : m.basis) p.basis.push_back({b.label + (x == 0 ? "|pt" : "|S2"), b.degree + 2 * int(x)});
    p.pairing = Matrix(t, t);
    p.has_triple = true;
    p.cap.assign(t, std::vector<Vec>(t, Vec(t)));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            p.pairing(i, j) = m.pairing(fiber_part(i), fiber_part(j)) * s2_pairing(s2_part(i), s2_part(j));
            const auto [pt_coef, s2_coef] = s2_cap(s2_part(i), s2_part(j));
            const Vec& ab = m.cap[fiber_part(i)][fiber_part(j)];
            for (std::size_t k = 0; k < d; ++k) {
                p.cap[i][j][k] = ab[k] * pt_coef;
                p.cap[i][j][d + k] = ab[k] * s2_coef;
            }
        }

    const Vec omega = basis_covector(m, m.h2.omega());
    const Vec chern = basis_covector(m, m.h2.c1());
    f.u_phi = Vec(t);
    f.c_phi = Vec(t);
    std::vector<std::string> names;
    Vec h2_omega, h2_c1;
    std::vector<bool> spherical;
    for (std::size_t i = 0; i < t; ++i) {
        if (p.basis[i].degree != 2) continue;
        const bool section = s2_part(i) == 1;
        if (!section) {
            f.u_phi[i] = omega[fiber_part(i)];
            f.c_phi[i] = chern[fiber_part(i)];
        }
        names.push_back(p.basis[i].label);
        h2_omega.push_back(f.u_phi[i]);
        h2_c1.push_back(f.c_phi[i]);
        spherical.push_back(section || in_spherical_span(m, fiber_part(i)));
    }
    p.h2 = H2Lattice(names, h2_omega, h2_c1, spherical);
    p.N = m.N;
    p.finalize();

    f.iota = Matrix(t, d);
    f.splitting = Matrix(t, d);
    for (std::size_t a = 0; a < d; ++a) {
        f.iota(a, a) = 1;
        f.splitting(d + a, a) = 1;
    }
    f.sigma_ref = unit_vec(t, d + m.point);
    f.sigma_label = p.basis[d + m.point].label;

    std::vector<int> degrees;
    for (const auto& b : p.basis) degrees.push_back(b.degree);
    const Level level = qm.gw.complete_below();
    f.gw_fiber = GWTable(degrees, m.h2, level);
    f.gw_section = GWTable(degrees, m.h2, level);

    auto split_args = [&](const std::vector<std::size_t>& args, std::vector<std::size_t>& fib,
                          std::vector<std::size_t>& s2) {
        fib.clear();
        s2.clear();
        for (auto i : args) {
            fib.push_back(fiber_part(i));
            s2.push_back(s2_part(i));
        }
    };

    // Vertical curves sit in a single fiber over a point of S^2.
    std::vector<std::size_t> fib, s2;
    for (std::size_t arity : qm.gw.arities()) {
        f.gw_fiber.declare(arity);
        for (const auto& key : qm.gw.keys(arity)) {
            if (key.is_zero()) continue;
            for_sorted_tuples(t, arity, [&](const std::vector<std::size_t>& args) {
                split_args(args, fib, s2);
                const Rational geo = arity == 2 ? s2_pairing(s2[0], s2[1]) : s2_triple(s2);
                if (geo == 0) return;
                const Rational v = qm.gw.stored(fib, key);
                if (v != 0) f.gw_fiber.add(args, key, geo * v);
            });
        }
    }

    // Sections in class pt x S^2 + B meet only classes of the form x x pt.
    f.gw_section.declare(2);
    f.gw_section.declare(3);
    for_sorted_tuples(d, 2, [&](const std::vector<std::size_t>& args) {
        const Rational v = m.pairing(args[0], args[1]);
        if (v != 0) f.gw_section.add(args, NovKey{}, v);
    });
    for_sorted_tuples(d, 3, [&](const std::vector<std::size_t>& args) {
        const Rational classical =
            intersect(m, cap(m, unit_vec(d, args[0]), unit_vec(d, args[1])), unit_vec(d, args[2]));
        if (classical != 0) f.gw_section.add(args, NovKey{}, classical);
    });
    if (qm.gw.has(3))
        for (const auto& e : qm.gw.entries(3))
            if (!e.key.is_zero()) f.gw_section.add(e.args, e.key, e.value);
    f.finalize();

    // Fixed cross-ratio invariants follow from splitting the domain.
    std::vector<NovKey> keys{NovKey{}};
    for (const auto& k : f.gw_section.keys(3))
        for (const auto& b : f.gw_fiber.keys(3))
            if (std::find(keys.begin(), keys.end(), k + b) == keys.end()) keys.push_back(k + b);
    for (const auto& k : f.gw_section.keys(3))
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    GWTable chi = f.gw_section;
    chi.declare(4);
    for (const auto& key : keys) {
        if (!f.gw_section.covers(key)) continue;
        for_sorted_tuples(t, 4, [&](const std::vector<std::size_t>& args) {
            if (!chi.dimension_rule(args, key, p.n)) return;
            std::vector<Vec> v;
            for (auto i : args) v.push_back(unit_vec(t, i));
            const Rational value = chi_decomposition(f, v, key);
            if (value != 0) chi.add(args, key, value);
        });
    }
    f.gw_section = chi;
    return f;
}

bool is_product_bundle(const FibrationModel& f) {
    try {
        return product_fixture(f.fiber) == f;
    } catch (const Error&) {
        return false;
    }
}

VerificationReport verify_product_formula(const FibrationModel& f, const Rational& cutoff) {
    VerificationReport report;
    report.suite = "product";
    report.cutoff = cutoff;
    report.table_completeness = f.gw_section.complete_below();
    const auto& m = f.fiber.model;
    const std::size_t d = m.dim();
    const std::size_t t = f.total.dim();
    const auto tl = f.total.labels();
    auto fmt = [&](const QHClass& q) { return format_class(tl, m.h2, q); };
    const ProductEngine fiber_engine(m, f.fiber.gw, true);
    const ProductEngine vertical(f.total, f.gw_fiber, true);
    const ProductEngine horizontal(f.total, f.gw_section, false, sigma_phi(f).offset);

    // Basis element i of the total space is a x x with x = pt or S^2.
    std::vector<std::pair<std::size_t, std::size_t>> parts(t, {d, 0});
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t a = 0; a < d; ++a) {
            if (f.iota.column(a) == unit_vec(t, i)) parts[i] = {a, 0};
            if (f.splitting.column(a) == unit_vec(t, i)) parts[i] = {a, 1};
        }
    for (std::size_t i = 0; i < t; ++i)
        if (parts[i].first == d) throw Inconsistent("total basis is not of product form at " + tl[i]);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            const auto [a, x] = parts[i];
            const auto [b, y] = parts[j];
            const QHClass ab = fiber_engine.multiply_basis(a, b, cutoff);
            const auto [pt_coef, s2_coef] = s2_cap(x, y);
            const QHClass expected_v = apply_linear(f.iota, ab.scaled(pt_coef)) + apply_linear(f.splitting, ab.scaled(s2_coef));
            const QHClass expected_h = x == 0 && y == 0 ? apply_linear(f.splitting, ab) : QHClass(t);
            const std::string inst = "(" + tl[i] + ", " + tl[j] + ")";
            report.expect_equal("vertical part of the tensor product", inst,
                                vertical.multiply_basis(i, j, cutoff), expected_v, fmt);
            report.expect_equal("section part of the tensor product", inst,
                                horizontal.multiply_basis(i, j, cutoff), expected_h, fmt);
        }
    return report;
}

} // namespace qhfib
