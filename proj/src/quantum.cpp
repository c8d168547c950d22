#include "qhfib/quantum.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"

#include <algorithm>

namespace qhfib {

namespace {

// Koszul sign relating the argument order `perm` to its sorted order.
int permutation_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[j] < perm[i] && degrees[perm[i]] % 2 != 0 && degrees[perm[j]] % 2 != 0) sign = -sign;
    return sign;
}

std::string tuple_label(const std::vector<std::string>& labels, const std::vector<std::size_t>& idx) {
    std::string out = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? ", " : "") + labels[idx[i]];
    return out + ")";
}

} // namespace

ProductEngine::ProductEngine(const ManifoldModel& space, GWTable table, bool classical, NovKey shift)
    : dim_(space.dim()), classical_(classical), shift_(std::move(shift)), table_(std::move(table)) {
    if (classical_) {
        if (!space.has_triple) throw MissingTripleData("manifold '" + space.name + "' has no triple intersection data");
        cap_ = space.cap;
    }
    sc_.assign(dim_, std::vector<std::map<NovKey, Vec, KeyOrder>>(dim_));
    std::vector<Vec> duals(dim_);
    for (std::size_t k = 0; k < dim_; ++k) duals[k] = space.left_dual_expand(unit_vec(dim_, k));
    for (const auto& e : table_.entries(3)) {
        if (classical_ && e.key.is_zero()) continue;
        std::vector<std::size_t> perm = e.args;
        do {
            const Rational v = permutation_sign(perm, table_.degrees()) * e.value;
            auto& slot = sc_[perm[0]][perm[1]];
            auto it = slot.try_emplace(e.key, Vec(dim_)).first;
            axpy(it->second, v, duals[perm[2]]);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

QHClass ProductEngine::multiply(const QHClass& a, const QHClass& b, const Rational& cutoff) const {
    QHClass out(dim_);
    for (const auto& [ka, va] : a.terms())
        for (const auto& [kb, vb] : b.terms()) {
            const NovKey base = ka + kb + shift_;
            const Rational budget = cutoff - energy(base);
            table_.require_energy(3, table_.energy_offset() + budget);
            for (std::size_t i = 0; i < dim_; ++i) {
                if (va[i] == 0) continue;
                for (std::size_t j = 0; j < dim_; ++j) {
                    if (vb[j] == 0) continue;
                    const Rational c = va[i] * vb[j];
                    if (classical_ && energy(base) <= cutoff) out.add(base, cap_[i][j], c);
                    for (const auto& [key, v] : sc_[i][j]) {
                        if (key.omega > budget) continue;
                        out.add(base - key, v, c);
                    }
                }
            }
        }
    return out.truncated(cutoff);
}

QHClass ProductEngine::multiply_basis(std::size_t i, std::size_t j, const Rational& cutoff) const {
    return multiply(QHClass::basis(dim_, i), QHClass::basis(dim_, j), cutoff);
}

QHClass quantum_product(const QuantumManifold& m, const QHClass& a, const QHClass& b, const Rational& cutoff) {
    return ProductEngine(m.model, m.gw, true).multiply(a, b, cutoff);
}

VerificationReport verify_associativity(const QuantumManifold& m, const Rational& cutoff) {
    VerificationReport report;
    report.suite = "assoc";
    report.cutoff = cutoff;
    report.table_completeness = m.gw.complete_below();
    const ProductEngine engine(m.model, m.gw, true);
    const auto labels = m.model.labels();
    const std::size_t d = m.model.dim();
    auto fmt = [&](const QHClass& q) { return format_class(m.model, q); };

    std::vector<std::vector<QHClass>> pair(d, std::vector<QHClass>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) pair[i][j] = engine.multiply_basis(i, j, cutoff);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const QHClass lhs = engine.multiply(pair[i][j], QHClass::basis(d, k), cutoff);
                const QHClass rhs = engine.multiply(QHClass::basis(d, i), pair[j][k], cutoff);
                report.expect_equal("associativity", tuple_label(labels, {i, j, k}), lhs, rhs, fmt);
            }

    if (m.gw.has(4)) {
        // n_chi(v1, v2, v3, v4; A) = (((v1 * v2) * v3)_A) . v4
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    const QHClass triple = engine.multiply(pair[i][j], QHClass::basis(d, k), cutoff);
                    std::vector<NovKey> keys;
                    for (const auto& [x, _] : triple.terms()) keys.push_back(-x);
                    for (const auto& key : m.gw.keys(4))
                        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
                    for (const auto& key : keys) {
                        if (key.omega > cutoff || key.is_zero()) continue;
                        if (!m.gw.covers(key)) {
                            report.skip("four-point splitting", tuple_label(labels, {i, j, k}),
                                        "class beyond table completeness");
                            continue;
                        }
                        const Vec prod = triple.component(-key);
                        for (std::size_t l = 0; l < d; ++l) {
                            const Rational lhs = m.gw.lookup({i, j, k, l}, key);
                            const Rational rhs = intersect(m.model, prod, unit_vec(d, l));
                            report.expect_equal("four-point splitting",
                                                tuple_label(labels, {i, j, k, l}) + " in " + m.gw.lattice().format(key),
                                                lhs, rhs);
                        }
                    }
                }
    }
    return report;
}

VerificationReport validate_gw_axioms(const GWTable& table, const ManifoldModel& m, const ClassOf& class_of) {
    VerificationReport report;
    report.suite = "axioms";
    report.table_completeness = table.complete_below();
    const auto labels = m.labels();
    const ClassOf class_vec =
        class_of ? class_of : ClassOf([&](const NovKey& k) { return m.h2_class(table.lattice().representative(k)); });
    auto where = [&](const GWTable::Entry& e) { return table.describe(e, labels); };

    for (std::size_t arity : table.arities())
        for (const auto& e : table.entries(arity)) {
            report.expect_true("dimension rule", where(e), table.dimension_rule(e.args, e.key, m.n));
            const bool has_fundamental =
                std::find(e.args.begin(), e.args.end(), m.fundamental) != e.args.end();
            if (has_fundamental && !table.is_zero_class(e.key) && arity != 4)
                report.record("fundamental class", where(e), to_string(e.value), "0", false);
            if (table.is_zero_class(e.key) && arity == 3 && m.has_triple) {
                const Rational classical =
                    intersect(m, cap(m, unit_vec(m.dim(), e.args[0]), unit_vec(m.dim(), e.args[1])),
                              unit_vec(m.dim(), e.args[2]));
                report.expect_equal("classical three-point", where(e), e.value, classical);
            }
        }

    std::vector<std::size_t> divisors;
    for (std::size_t w = 0; w < m.dim(); ++w)
        if (m.basis[w].degree == 2 * m.n - 2) divisors.push_back(w);

    if (table.has(2) && table.has(3)) {
        std::vector<NovKey> keys = table.keys(2);
        for (const auto& k : table.keys(3))
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        for (const auto& key : keys) {
            if (table.is_zero_class(key)) continue;
            if (!table.covers(key)) {
                report.skip("divisor", table.lattice().format(key), "class beyond table completeness");
                continue;
            }
            const Vec cls = class_vec(key);
            for (std::size_t w : divisors) {
                const Rational wa = intersect(m, unit_vec(m.dim(), w), cls);
                for (std::size_t a = 0; a < m.dim(); ++a)
                    for (std::size_t b = a; b < m.dim(); ++b) {
                        const Rational lhs = table.stored({a, b, w}, key);
                        const Rational rhs = wa * table.stored({a, b}, key);
                        if (lhs == 0 && rhs == 0) continue;
                        report.expect_equal("divisor",
                                            tuple_label(labels, {a, b, w}) + " in " + table.lattice().format(key),
                                            lhs, rhs);
                    }
            }
        }
    }

    if (table.has(3) && table.has(4)) {
        for (const auto& e : table.entries(4)) {
            auto it = std::find(e.args.begin(), e.args.end(), m.fundamental);
            if (it == e.args.end()) continue;
            std::vector<std::size_t> rest(e.args.begin(), it);
            rest.insert(rest.end(), it + 1, e.args.end());
            if (!table.covers(e.key)) continue;
            report.expect_equal("four-point reduction", where(e), e.value, table.stored(rest, e.key));
        }
        for (const auto& e : table.entries(3)) {
            if (!table.covers(e.key) || table.is_zero_class(e.key)) continue;
            std::vector<std::size_t> args = e.args;
            args.push_back(m.fundamental);
            if (table.stored(args, e.key) == 0)
                report.record("four-point reduction", where(e) + " with [M] appended", "0", to_string(e.value),
                              false);
        }
    }
    return report;
}

NovikovElement nov_determinant(const std::vector<std::vector<NovikovElement>>& m, const Rational& cutoff) {
    const std::size_t d = m.size();
    if (d > 20) throw Error("determinant dimension too large");
    std::vector<NovikovElement> dp(std::size_t(1) << d);
    dp[0] = NovikovElement::scalar(1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask].is_zero()) continue;
        const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row == d) continue;
        for (std::size_t c = 0; c < d; ++c) {
            if (mask & (std::size_t(1) << c)) continue;
            if (m[row][c].is_zero()) continue;
            const int above = __builtin_popcountll(mask >> (c + 1));
            NovikovElement term = nov_mul(dp[mask], m[row][c], cutoff);
            if (above % 2 != 0) term = nov_neg(term);
            dp[mask | (std::size_t(1) << c)] = nov_add(dp[mask | (std::size_t(1) << c)], term);
        }
    }
    return dp.back();
}

std::optional<QHClass> is_unit(const QuantumManifold& m, const QHClass& q, const Rational& cutoff) {
    const std::size_t d = m.model.dim();
    if (q.is_zero()) return std::nullopt;
    const ProductEngine engine(m.model, m.gw, true);
    const NovKey lead = q.terms().begin()->first;
    const QHClass qn = q.shifted(-lead);
    // x solves q * x = 1 iff x' = x e^{lead} solves qn * x' = 1.
    const Rational target = std::max<Rational>(cutoff + energy(lead), 0);

    auto matrix_at = [&](const Rational& w) {
        std::vector<std::vector<NovikovElement>> mat(d, std::vector<NovikovElement>(d));
        for (std::size_t j = 0; j < d; ++j) {
            const QHClass col = engine.multiply(qn, QHClass::basis(d, j), w);
            for (const auto& [k, v] : col.terms())
                for (std::size_t i = 0; i < d; ++i)
                    if (v[i] != 0) mat[i][j].add(k, v[i]);
        }
        return mat;
    };

    // Entries are exact below `exact`, so every determinant term lies below
    // d * exact; a determinant vanishing there vanishes identically.
    Rational top_class = 0;
    for (const auto& k : m.gw.all_keys()) top_class = std::max<Rational>(top_class, m.gw.class_energy(k));
    const Rational exact = Rational(d) * (*qn.max_energy() + top_class);
    Rational w = target;
    auto mat = matrix_at(w);
    NovikovElement det = nov_determinant(mat, w);
    while (det.is_zero()) {
        if (w >= exact) return std::nullopt;
        w = exact;
        mat = matrix_at(w);
        det = nov_determinant(mat, w);
    }
    const Rational lead_energy = energy(det.terms().begin()->first);
    const Rational work = std::max<Rational>(target + 2 * lead_energy, w);
    if (work > w) {
        mat = matrix_at(work);
        det = nov_determinant(mat, work);
    }
    NovikovElement det_inv;
    try {
        det_inv = nov_invert(det, work);
    } catch (const NotInvertible&) {
        return std::nullopt;
    }

    QHClass xn(d);
    for (std::size_t i = 0; i < d; ++i) {
        auto replaced = mat;
        for (std::size_t r = 0; r < d; ++r) replaced[r][i] = NovikovElement::scalar(r == m.model.fundamental ? 1 : 0);
        const NovikovElement coord = nov_mul(nov_determinant(replaced, work), det_inv, work);
        xn += QHClass::basis(d, i).times(coord);
    }
    xn = xn.truncated(target);
    const QHClass check = engine.multiply(qn, xn, target);
    if (!(check == QHClass::basis(d, m.model.fundamental).truncated(target))) return std::nullopt;
    return xn.shifted(-lead).truncated(cutoff);
}

bool qh_plus_closure_check(const GWTable& table) {
    for (std::size_t arity : table.arities())
        for (const auto& e : table.entries(arity))
            if (e.key.chern + table.chern_offset() > 0) return false;
    return true;
}

bool in_qh_plus(const ManifoldModel& m, const QHClass& q) {
    for (const auto& [k, v] : q.terms())
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0 && (m.basis[i].degree % 2 != 0 || m.basis[i].degree >= 2 * m.n)) return false;
    return true;
}

} // namespace qhfib
