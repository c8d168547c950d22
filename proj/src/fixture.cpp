#include "qhfib/fixture.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"

#include <fstream>
#include <sstream>

namespace qhfib {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const json& at(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing key '" + key + "'");
    return *it;
}

// Runs fn, prefixing any library error with the JSON path.
template <class F>
auto guarded(const std::string& path, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        fail(path, msg);
    } catch (const Error& e) {
        fail(path, e.what());
    } catch (const json::exception& e) {
        fail(path, e.what());
    }
}

Rational rational_of(const json& j, const std::string& path) {
    if (j.is_string()) return guarded(path, [&] { return parse_rational(j.get<std::string>()); });
    if (j.is_number_integer()) return Rational(j.get<long>());
    fail(path, "expected an exact number written as \"p/q\"");
}

std::string path_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& array_at(const json& j, const std::string& key, const std::string& path) {
    const json& a = at(j, key, path);
    if (!a.is_array()) fail(path + "." + key, "expected an array");
    return a;
}

Vec dense_vec(const json& j, std::size_t size, const std::string& path) {
    if (!j.is_array() || j.size() != size) fail(path, "expected an array of " + std::to_string(size) + " numbers");
    Vec v(size);
    for (std::size_t i = 0; i < size; ++i) v[i] = rational_of(j[i], path_index(path, i));
    return v;
}

std::vector<BasisElement> parse_basis(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path_index(path, i);
        const json& label = at(j[i], "label", p);
        const json& degree = at(j[i], "degree", p);
        if (!label.is_string() || !degree.is_number_integer()) fail(p, "expected {label: string, degree: integer}");
        basis.push_back({label.get<std::string>(), degree.get<int>()});
    }
    return basis;
}

std::size_t label_index(const std::vector<BasisElement>& basis, const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a basis label");
    const std::string label = j.get<std::string>();
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].label == label) return i;
    fail(path, "unknown basis label '" + label + "'");
}

int codim(const std::vector<BasisElement>& basis, int n, std::size_t i) { return 2 * n - basis[i].degree; }

Matrix parse_pairing(const json& j, const std::vector<BasisElement>& basis, const std::string& path) {
    const std::size_t d = basis.size();
    Matrix m(d, d);
    std::vector<std::vector<bool>> given(d, std::vector<bool>(d, false));
    if (!j.is_array()) fail(path, "expected an array of [label, label, value]");
    for (std::size_t e = 0; e < j.size(); ++e) {
        const std::string p = path_index(path, e);
        if (!j[e].is_array() || j[e].size() != 3) fail(p, "expected [label, label, value]");
        const std::size_t a = label_index(basis, j[e][0], p + "[0]");
        const std::size_t b = label_index(basis, j[e][1], p + "[1]");
        m(a, b) = rational_of(j[e][2], p + "[2]");
        given[a][b] = true;
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            if (given[a][b] && !given[b][a]) m(b, a) = koszul_sign(basis[a].degree, basis[b].degree) * m(a, b);
    return m;
}

std::vector<std::vector<Vec>> parse_triple(const json& j, const std::vector<BasisElement>& basis, int n,
                                           std::size_t fundamental, const std::string& path) {
    const std::size_t d = basis.size();
    std::vector<std::vector<Vec>> cap(d, std::vector<Vec>(d, Vec(d)));
    std::vector<std::vector<bool>> given(d, std::vector<bool>(d, false));
    if (!j.is_array()) fail(path, "expected an array of [label, label, label, value]");
    for (std::size_t e = 0; e < j.size(); ++e) {
        const std::string p = path_index(path, e);
        if (!j[e].is_array() || j[e].size() != 4) fail(p, "expected [label, label, label, value]");
        const std::size_t a = label_index(basis, j[e][0], p + "[0]");
        const std::size_t b = label_index(basis, j[e][1], p + "[1]");
        const std::size_t c = label_index(basis, j[e][2], p + "[2]");
        cap[a][b][c] = rational_of(j[e][3], p + "[3]");
        given[a][b] = true;
    }
    for (std::size_t a = 0; a < d; ++a) {
        if (!given[fundamental][a]) {
            cap[fundamental][a] = unit_vec(d, a);
            given[fundamental][a] = true;
        }
        if (!given[a][fundamental]) {
            cap[a][fundamental] = unit_vec(d, a);
            given[a][fundamental] = true;
        }
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            if (given[a][b] && !given[b][a]) {
                const int sign = koszul_sign(codim(basis, n, a), codim(basis, n, b));
                for (std::size_t c = 0; c < d; ++c) cap[b][a][c] = sign * cap[a][b][c];
            }
    return cap;
}

std::size_t top_index(const std::vector<BasisElement>& basis, int n, const std::string& path) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].degree == 2 * n) return i;
    fail(path, "no basis class of top degree");
}

GWTable parse_gw(const json& j, const std::vector<BasisElement>& basis, const H2Lattice& lattice,
                 const std::string& path) {
    std::vector<int> degrees;
    for (const auto& b : basis) degrees.push_back(b.degree);
    const json& level = at(j, "complete_below", path);
    if (!level.is_string()) fail(path + ".complete_below", "expected \"p/q\" or \"inf\"");
    GWTable table(degrees, lattice,
                  guarded(path + ".complete_below", [&] { return parse_level(level.get<std::string>()); }));
    const std::pair<const char*, std::size_t> arities[] = {{"two_point", 2}, {"three_point", 3}, {"four_point_chi", 4}};
    for (const auto& [name, arity] : arities) {
        if (!j.contains(name)) continue;
        const std::string p = path + "." + name;
        const json& list = j.at(name);
        if (!list.is_array()) fail(p, "expected an array of entries");
        table.declare(arity);
        for (std::size_t e = 0; e < list.size(); ++e) {
            const std::string pe = path_index(p, e);
            const json& args = at(list[e], "args", pe);
            if (!args.is_array() || args.size() != arity)
                fail(pe + ".args", "expected " + std::to_string(arity) + " basis labels");
            std::vector<std::size_t> idx;
            for (std::size_t a = 0; a < arity; ++a) idx.push_back(label_index(basis, args[a], pe + ".args"));
            const json& cls = at(list[e], "class", pe);
            Vec coords;
            if (cls.is_string())
                coords = guarded(pe + ".class", [&] { return lattice.parse_coords(cls.get<std::string>()); });
            else
                coords = dense_vec(cls, lattice.rank(), pe + ".class");
            const Rational value = rational_of(at(list[e], "value", pe), pe + ".value");
            guarded(pe, [&] {
                if (table.stored(idx, lattice.key(coords)) != 0) fail(pe, "duplicate entry");
                table.add(idx, coords, value);
                return 0;
            });
        }
    }
    return table;
}

QuantumManifold parse_manifold(const json& doc) {
    const std::string path = "manifold";
    const json& j = at(doc, "manifold", "$");
    QuantumManifold qm;
    ManifoldModel& m = qm.model;
    const json& name = at(j, "name", path);
    const json& n = at(j, "n", path);
    if (!name.is_string()) fail(path + ".name", "expected a string");
    if (!n.is_number_integer()) fail(path + ".n", "expected an integer");
    m.name = name.get<std::string>();
    m.n = n.get<int>();
    m.basis = parse_basis(at(j, "basis", path), path + ".basis");
    m.pairing = parse_pairing(at(j, "pairing", path), m.basis, path + ".pairing");
    if (j.contains("triple")) {
        m.has_triple = true;
        m.cap = parse_triple(j.at("triple"), m.basis, m.n, top_index(m.basis, m.n, path + ".basis"), path + ".triple");
    }
    const json& h2 = at(j, "h2", path);
    const std::string hp = path + ".h2";
    std::vector<std::string> gens;
    for (const auto& g : array_at(h2, "generators", hp)) {
        if (!g.is_string()) fail(hp + ".generators", "expected generator names");
        gens.push_back(g.get<std::string>());
    }
    const Vec omega = dense_vec(at(h2, "omega", hp), gens.size(), hp + ".omega");
    const Vec c1 = dense_vec(at(h2, "c1", hp), gens.size(), hp + ".c1");
    std::vector<bool> spherical;
    const json& sph = array_at(h2, "spherical", hp);
    if (sph.size() != gens.size()) fail(hp + ".spherical", "expected one flag per generator");
    for (const auto& s : sph) {
        if (!s.is_boolean()) fail(hp + ".spherical", "expected booleans");
        spherical.push_back(s.get<bool>());
    }
    m.h2 = guarded(hp, [&] { return H2Lattice(gens, omega, c1, spherical); });
    if (h2.contains("classes")) {
        const json& classes = h2.at("classes");
        for (const auto& g : gens) {
            const std::string cp = hp + ".classes." + g;
            const json& c = at(classes, g, hp + ".classes");
            if (!c.is_string()) fail(cp, "expected a class expression");
            m.h2_classes.push_back(guarded(cp, [&] { return parse_vec(m.labels(), c.get<std::string>()); }));
        }
    }
    const json& N = at(j, "N", path);
    if (!N.is_number_integer() || N.get<long>() < 0) fail(path + ".N", "expected a nonnegative integer");
    m.N = N.get<long>();
    guarded(path, [&] {
        m.finalize();
        return 0;
    });
    if (doc.contains("gw")) {
        qm.gw = parse_gw(doc.at("gw"), m.basis, m.h2, "gw");
    } else {
        std::vector<int> degrees;
        for (const auto& b : m.basis) degrees.push_back(b.degree);
        qm.gw = GWTable(degrees, m.h2, Rational(0));
    }
    return qm;
}

Matrix parse_rows(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    if (!j.is_array() || j.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
    Matrix m(cols, rows);
    for (std::size_t r = 0; r < rows; ++r) m.set_column(r, dense_vec(j[r], cols, path_index(path, r)));
    return m;
}

FibrationModel parse_fibration(const json& j, const QuantumManifold& qm) {
    const std::string path = "fibration";
    FibrationModel f;
    f.fiber = qm;
    const std::size_t d = qm.model.dim();
    ManifoldModel& p = f.total;
    p.name = j.contains("total_name") ? j.at("total_name").get<std::string>() : qm.model.name + " total";
    p.n = qm.model.n + 1;
    p.basis = parse_basis(at(j, "total_basis", path), path + ".total_basis");
    const std::size_t t = p.basis.size();
    p.pairing = parse_pairing(at(j, "total_pairing", path), p.basis, path + ".total_pairing");
    if (j.contains("total_triple")) {
        p.has_triple = true;
        p.cap = parse_triple(j.at("total_triple"), p.basis, p.n, top_index(p.basis, p.n, path + ".total_basis"),
                             path + ".total_triple");
    }
    f.iota = parse_rows(at(j, "iota", path), d, t, path + ".iota");
    f.splitting = parse_rows(at(j, "splitting", path), d, t, path + ".splitting");
    f.u_phi = dense_vec(at(j, "u_phi", path), t, path + ".u_phi");
    f.c_phi = dense_vec(at(j, "c_phi", path), t, path + ".c_phi");

    const json& sigma = at(j, "sigma_ref", path);
    if (sigma.is_string()) {
        const std::string text = sigma.get<std::string>();
        std::vector<std::string> labels;
        for (const auto& b : p.basis) labels.push_back(b.label);
        f.sigma_ref = guarded(path + ".sigma_ref", [&] { return parse_vec(labels, text); });
        f.sigma_label = text;
    } else {
        f.sigma_ref = dense_vec(sigma, t, path + ".sigma_ref");
    }

    const json& h2 = at(j, "h2_total", path);
    const std::string hp = path + ".h2_total";
    std::vector<std::string> gens;
    Vec omega, c1;
    for (const auto& g : array_at(h2, "generators", hp)) {
        const std::size_t i = label_index(p.basis, g, hp + ".generators");
        gens.push_back(p.basis[i].label);
        omega.push_back(f.u_phi[i]);
        c1.push_back(f.c_phi[i]);
    }
    std::vector<bool> spherical;
    const json& sph = array_at(h2, "spherical", hp);
    if (sph.size() != gens.size()) fail(hp + ".spherical", "expected one flag per generator");
    for (const auto& s : sph) {
        if (!s.is_boolean()) fail(hp + ".spherical", "expected booleans");
        spherical.push_back(s.get<bool>());
    }
    p.h2 = guarded(hp, [&] { return H2Lattice(gens, omega, c1, spherical); });
    p.N = qm.model.N;
    guarded(path, [&] {
        p.finalize();
        return 0;
    });

    f.gw_fiber = parse_gw(at(j, "gw_fiber", path), p.basis, qm.model.h2, path + ".gw_fiber");
    f.gw_section = parse_gw(at(j, "gw_section", path), p.basis, qm.model.h2, path + ".gw_section");
    guarded(path, [&] {
        f.finalize();
        return 0;
    });
    return f;
}

json basis_json(const std::vector<BasisElement>& basis) {
    json out = json::array();
    for (const auto& b : basis) out.push_back({{"label", b.label}, {"degree", b.degree}});
    return out;
}

json vec_json(const Vec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

json pairing_json(const ManifoldModel& m) {
    json out = json::array();
    for (std::size_t a = 0; a < m.dim(); ++a)
        for (std::size_t b = 0; b < m.dim(); ++b)
            if (m.pairing(a, b) != 0) out.push_back({m.basis[a].label, m.basis[b].label, to_string(m.pairing(a, b))});
    return out;
}

json triple_json(const ManifoldModel& m) {
    json out = json::array();
    for (std::size_t a = 0; a < m.dim(); ++a)
        for (std::size_t b = 0; b < m.dim(); ++b)
            for (std::size_t c = 0; c < m.dim(); ++c)
                if (m.cap[a][b][c] != 0)
                    out.push_back({m.basis[a].label, m.basis[b].label, m.basis[c].label, to_string(m.cap[a][b][c])});
    return out;
}

json rows_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(vec_json(m.column(c)));
    return out;
}

} // namespace

json gw_table_to_json(const GWTable& table, const std::vector<std::string>& labels) {
    json out;
    out["complete_below"] = level_to_string(table.complete_below());
    const std::pair<const char*, std::size_t> arities[] = {{"two_point", 2}, {"three_point", 3}, {"four_point_chi", 4}};
    for (const auto& [name, arity] : arities) {
        if (!table.has(arity)) continue;
        json list = json::array();
        for (const auto& e : table.entries(arity)) {
            json args = json::array();
            for (auto a : e.args) args.push_back(labels.at(a));
            list.push_back({{"args", args}, {"class", vec_json(table.lattice().representative(e.key))},
                            {"value", to_string(e.value)}});
        }
        out[name] = list;
    }
    return out;
}

FixtureDocument parse_fixture(const json& j) {
    FixtureDocument doc;
    doc.manifold = parse_manifold(j);
    if (j.contains("fibration")) doc.fibration = parse_fibration(j.at("fibration"), doc.manifold);
    return doc;
}

FixtureDocument parse_fixture_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_fixture(j);
}

FixtureDocument load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_fixture_text(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json fixture_to_json(const FixtureDocument& doc) {
    const ManifoldModel& m = doc.manifold.model;
    json out;
    json man;
    man["name"] = m.name;
    man["n"] = m.n;
    man["basis"] = basis_json(m.basis);
    man["pairing"] = pairing_json(m);
    if (m.has_triple) man["triple"] = triple_json(m);
    json h2;
    h2["generators"] = m.h2.names();
    h2["omega"] = vec_json(m.h2.omega());
    h2["c1"] = vec_json(m.h2.c1());
    h2["spherical"] = m.h2.spherical();
    bool default_classes = true;
    for (std::size_t g = 0; g < m.h2.rank(); ++g) {
        const auto& name = m.h2.names()[g];
        const auto labels = m.labels();
        const auto it = std::find(labels.begin(), labels.end(), name);
        if (it == labels.end() || m.h2_classes[g] != unit_vec(m.dim(), std::size_t(it - labels.begin())))
            default_classes = false;
    }
    if (!default_classes) {
        json classes;
        for (std::size_t g = 0; g < m.h2.rank(); ++g) classes[m.h2.names()[g]] = format_vec(m.labels(), m.h2_classes[g]);
        h2["classes"] = classes;
    }
    man["h2"] = h2;
    man["N"] = m.N;
    out["manifold"] = man;
    if (!doc.manifold.gw.arities().empty() || doc.manifold.gw.complete_below() != Level(Rational(0)))
        out["gw"] = gw_table_to_json(doc.manifold.gw, m.labels());

    if (doc.fibration) {
        const FibrationModel& f = *doc.fibration;
        const auto tl = f.total.labels();
        json fib;
        fib["total_name"] = f.total.name;
        fib["total_basis"] = basis_json(f.total.basis);
        fib["iota"] = rows_json(f.iota);
        fib["splitting"] = rows_json(f.splitting);
        fib["total_pairing"] = pairing_json(f.total);
        if (f.total.has_triple) fib["total_triple"] = triple_json(f.total);
        fib["u_phi"] = vec_json(f.u_phi);
        fib["c_phi"] = vec_json(f.c_phi);
        const std::string formatted = format_vec(tl, f.sigma_ref);
        if (f.sigma_label == formatted) fib["sigma_ref"] = f.sigma_label;
        else fib["sigma_ref"] = vec_json(f.sigma_ref);
        fib["h2_total"] = {{"generators", f.total.h2.names()}, {"spherical", f.total.h2.spherical()}};
        fib["gw_fiber"] = gw_table_to_json(f.gw_fiber, tl);
        fib["gw_section"] = gw_table_to_json(f.gw_section, tl);
        out["fibration"] = fib;
    }
    return out;
}

std::string dump_fixture(const FixtureDocument& doc) { return fixture_to_json(doc).dump(2) + "\n"; }

} // namespace qhfib
