#!/usr/bin/env python3
"""Generate the shipped fixture files.

Every number is computed with fractions.Fraction and written as an exact
"p/q" string. Product bundles are produced by the qhfib CLI itself when
--cli is given.
"""

import argparse
import itertools
import json
import subprocess
from fractions import Fraction as Q
from pathlib import Path


def s(x):
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def solve(matrix, rhs):
    """Solve matrix * x = rhs exactly (matrix square and invertible)."""
    n = len(matrix)
    a = [[Q(v) for v in row] + [Q(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


class Manifold:
    """Homological model: labels, degrees, pairing matrix, cap constants."""

    def __init__(self, name, n, basis, pairing, cap, h2, N, gw3=None, gw2=None):
        self.name, self.n, self.N = name, n, N
        self.labels = [b[0] for b in basis]
        self.degrees = [b[1] for b in basis]
        self.pairing = pairing
        self.cap = cap  # cap[i][j] = coefficient vector
        self.h2 = h2    # dict: generators, omega, c1, spherical, classes
        self.gw3 = gw3 or {}  # (sorted index triple, class tuple) -> value
        self.gw2 = gw2
        self.dim = len(basis)
        self.fundamental = self.degrees.index(2 * n)

    def idx(self, label):
        return self.labels.index(label)

    def vec(self, **coeffs):
        v = [Q(0)] * self.dim
        for k, c in coeffs.items():
            v[self.idx(k)] = Q(c)
        return v

    def dot(self, a, b):
        return sum(a[i] * self.pairing[i][j] * b[j] for i in range(self.dim) for j in range(self.dim))

    def left_dual(self, values):
        """x with x . e_k = values[k]."""
        mt = [[self.pairing[i][k] for i in range(self.dim)] for k in range(self.dim)]
        return solve(mt, values)

    def gw3_value(self, args, cls):
        return self.gw3.get((tuple(sorted(args)), cls), Q(0))

    def classes3(self):
        return sorted({c for (_, c) in self.gw3})

    def product(self, i, j):
        """Quantum product e_i * e_j as {class: vector} with class 0 classical."""
        zero = tuple([0] * len(self.h2["generators"]))
        out = {zero: list(self.cap[i][j])}
        for cls in self.classes3():
            if cls == zero:
                continue
            vals = [self.gw3_value((i, j, k), cls) for k in range(self.dim)]
            if any(vals):
                out[cls] = self.left_dual(vals)
        return out

    def manifold_json(self):
        d = self.dim
        pairing = [[self.labels[i], self.labels[j], s(self.pairing[i][j])]
                   for i in range(d) for j in range(d) if self.pairing[i][j] != 0]
        triple = [[self.labels[i], self.labels[j], self.labels[k], s(self.cap[i][j][k])]
                  for i in range(d) for j in range(d) for k in range(d) if self.cap[i][j][k] != 0]
        out = {"name": self.name, "n": self.n,
               "basis": [{"label": l, "degree": g} for l, g in zip(self.labels, self.degrees)],
               "pairing": pairing, "triple": triple}
        if self.h2 is None:
            return out
        h2 = {
            "generators": self.h2["generators"],
            "omega": [s(x) for x in self.h2["omega"]],
            "c1": [s(x) for x in self.h2["c1"]],
            "spherical": self.h2["spherical"],
        }
        if "classes" in self.h2:
            h2["classes"] = self.h2["classes"]
        out["h2"] = h2
        out["N"] = self.N
        return out

    def h2_vector(self, cls):
        out = [Q(0)] * self.dim
        for g, coeff in enumerate(cls):
            name = self.h2["generators"][g]
            out[self.idx(self.h2.get("classes", {}).get(name, name))] += coeff
        return out

    def derive_two_point(self):
        """Two-point invariants from the divisor axiom, checked against every divisor."""
        zero = tuple([0] * len(self.h2["generators"]))
        codim2 = [k for k in range(self.dim) if self.degrees[k] == 2 * self.n - 2]
        gw2 = {}
        for cls in self.classes3():
            if cls == zero:
                continue
            image = self.h2_vector(cls)
            divisors = [(w, self.dot([Q(int(i == w)) for i in range(self.dim)], image)) for w in codim2]
            divisors = [(w, x) for (w, x) in divisors if x != 0]
            w0, x0 = divisors[0]
            for args in itertools.combinations_with_replacement(range(self.dim), 2):
                v = self.gw3_value(args + (w0,), cls) / x0
                for w, x in divisors[1:]:
                    assert self.gw3_value(args + (w,), cls) == v * x, "divisor mismatch"
                if v != 0:
                    gw2[(args, cls)] = v
        self.gw2 = gw2

    def gw_json(self):
        out = {"complete_below": "inf"}
        if self.gw2 is not None:
            out["two_point"] = table_entries(self.gw2, self.labels)
        out["three_point"] = table_entries(self.gw3, self.labels)
        return out


def table_entries(table, labels):
    rows = []
    for (args, cls), v in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if v != 0:
            rows.append({"args": [labels[a] for a in args], "class": [s(c) for c in cls], "value": s(v)})
    return rows


def caps_from_pairing(labels, degrees, pairing, point_products):
    """Cap structure of a small even model: unit rows for the top class,
    the given degree-complementary products, zero otherwise."""
    d = len(labels)
    cap = [[[Q(0)] * d for _ in range(d)] for _ in range(d)]
    top = max(degrees)
    for i in range(d):
        for j in range(d):
            if degrees[i] == top:
                cap[i][j][j] = Q(1)
            elif degrees[j] == top:
                cap[i][j][i] = Q(1)
    for (a, b), vec in point_products.items():
        i, j = labels.index(a), labels.index(b)
        cap[i][j] = list(vec)
        cap[j][i] = list(vec)
    return cap


# ---------------------------------------------------------------- fibers

def sphere():
    labels = ["1", "pt"]
    degrees = [2, 0]
    pairing = [[Q(0), Q(1)], [Q(1), Q(0)]]
    cap = caps_from_pairing(labels, degrees, pairing, {})
    h2 = {"generators": ["A"], "omega": [Q(2)], "c1": [Q(2)], "spherical": [True], "classes": {"A": "1"}}
    gw3 = {((1, 1, 1), (1,)): Q(1)}
    gw2 = {((1, 1), (1,)): Q(1)}
    return Manifold("S2", 1, list(zip(labels, degrees)), pairing, cap, h2, 2, gw3, gw2)


def torus():
    labels = ["1", "pt"]
    degrees = [2, 0]
    pairing = [[Q(0), Q(1)], [Q(1), Q(0)]]
    cap = caps_from_pairing(labels, degrees, pairing, {})
    h2 = {"generators": ["T"], "omega": [Q(1)], "c1": [Q(0)], "spherical": [False], "classes": {"T": "1"}}
    return Manifold("T2", 1, list(zip(labels, degrees)), pairing, cap, h2, 0, {}, None)


def ruled_fiber(kappa):
    """Even part of the ruled surface over T^2 with fiber F and sections T+-."""
    labels = ["1", "F", "T-", "pt"]
    degrees = [4, 2, 2, 0]
    pairing = [[Q(0)] * 4 for _ in range(4)]
    pairing[0][3] = pairing[3][0] = Q(1)
    pairing[1][2] = pairing[2][1] = Q(1)
    pairing[2][2] = Q(-1)
    pt = [Q(0), Q(0), Q(0), Q(1)]
    cap = caps_from_pairing(labels, degrees, pairing, {
        ("F", "T-"): pt,
        ("T-", "T-"): [-x for x in pt],
        ("F", "F"): [Q(0)] * 4,
    })
    h2 = {"generators": ["F", "T-"], "omega": [Q(2), Q(kappa)], "c1": [Q(2), Q(-1)],
          "spherical": [True, False]}
    gw3 = {((2, 2, 3), (1, 0)): Q(1)}
    gw2 = {((2, 3), (1, 0)): Q(1)}
    return Manifold("ruled surface over T2", 2, list(zip(labels, degrees)), pairing, cap, h2, 2, gw3, gw2)


def sphere_product():
    """S^2 x S^2 with 3-point invariants from the product of the two factors."""
    s2 = sphere()
    fl = s2.labels
    labels = [f"{a}x{b}" for a in fl for b in fl]
    degrees = [s2.degrees[i] + s2.degrees[j] for i in range(2) for j in range(2)]
    d = 4
    pairing = [[s2.pairing[i // 2][j // 2] * s2.pairing[i % 2][j % 2] for j in range(d)] for i in range(d)]
    cap = [[[s2.cap[i // 2][j // 2][k // 2] * s2.cap[i % 2][j % 2][k % 2] for k in range(d)]
            for j in range(d)] for i in range(d)]

    def n_s2(args, k):
        if k == 0:
            i, j, l = args
            return sum(s2.cap[i][j][m] * s2.pairing[m][l] for m in range(2))
        return s2.gw3_value(args, (k,))

    gw3 = {}
    for args in itertools.combinations_with_replacement(range(d), 3):
        for ka, kb in [(1, 0), (0, 1), (1, 1)]:
            v = n_s2([a // 2 for a in args], ka) * n_s2([a % 2 for a in args], kb)
            if v != 0:
                gw3[(args, (ka, kb))] = v
    h2 = {"generators": ["A", "B"], "omega": [Q(2), Q(3)], "c1": [Q(2), Q(2)], "spherical": [True, True],
          "classes": {"A": "1xpt", "B": "ptx1"}}
    m = Manifold("S2xS2", 2, list(zip(labels, degrees)), pairing, cap, h2, 2, gw3, None)
    m.derive_two_point()
    return m


# ---------------------------------------------------------- fibrations

class Fibration:
    def __init__(self, fiber, total, iota, splitting, u_phi, c_phi, sigma_ref, h2_total, section2,
                 section3=None, total_name=None):
        self.fiber, self.total = fiber, total
        self.iota, self.splitting = iota, splitting  # lists of total vectors per fiber basis element
        self.u_phi, self.c_phi = u_phi, c_phi
        self.sigma_ref, self.h2_total = sigma_ref, h2_total
        self.section2, self.section3 = section2, section3 or None
        self.total_name = total_name or total.name

    def split_coords(self, v):
        """Coordinates of a total class in the basis iota(e_i), s(e_i)."""
        cols = self.iota + self.splitting
        m = [[cols[c][r] for c in range(len(cols))] for r in range(self.total.dim)]
        x = solve(m, v)
        d = self.fiber.dim
        return x[:d], x[d:]

    def vertical_tables(self):
        """Vertical invariants of P: a term with exactly one iota slot is
        n_M(a, b, c; B); all other terms vanish."""
        t, f = self.total, self.fiber
        zero = tuple([0] * len(f.h2["generators"]))
        parts = [self.split_coords([Q(int(i == k)) for i in range(t.dim)]) for k in range(t.dim)]
        gw3 = {}
        for args in itertools.combinations_with_replacement(range(t.dim), 3):
            for cls in f.classes3():
                if cls == zero:
                    continue
                total = Q(0)
                for p in range(3):
                    ip = parts[args[p]][0]
                    others = [parts[args[q]][1] for q in range(3) if q != p]
                    for a in range(f.dim):
                        if ip[a] == 0:
                            continue
                        for b in range(f.dim):
                            if others[0][b] == 0:
                                continue
                            for c in range(f.dim):
                                if others[1][c] == 0:
                                    continue
                                total += ip[a] * others[0][b] * others[1][c] * f.gw3_value((a, b, c), cls)
                if total != 0:
                    gw3[(args, cls)] = total
        gw2 = {}
        codim2 = [k for k in range(t.dim) if t.degrees[k] == 2 * t.n - 2]
        for cls in {c for (_, c) in gw3}:
            fiber_class = [Q(0)] * f.dim
            for g, coeff in enumerate(cls):
                name = f.h2["generators"][g]
                label = f.h2.get("classes", {}).get(name, name)
                fiber_class[f.idx(label)] += coeff
            image = [sum(self.iota[a][r] * fiber_class[a] for a in range(f.dim)) for r in range(t.dim)]
            divisors = [(w, t.dot([Q(int(i == w)) for i in range(t.dim)], image)) for w in codim2]
            divisors = [(w, x) for (w, x) in divisors if x != 0]
            w0, x0 = divisors[0]
            for args in itertools.combinations_with_replacement(range(t.dim), 2):
                v = gw3.get((tuple(sorted(args + (w0,))), cls), Q(0)) / x0
                for w, x in divisors[1:]:
                    assert gw3.get((tuple(sorted(args + (w,))), cls), Q(0)) == v * x, "divisor mismatch"
                if v != 0:
                    gw2[(args, cls)] = v
        return gw2, gw3

    def to_json(self):
        t, f = self.total, self.fiber
        gw2, gw3 = self.vertical_tables()
        man = t.manifold_json()
        section = {"complete_below": "inf", "two_point": table_entries(self.section2, t.labels)}
        if self.section3 is not None:
            section["three_point"] = table_entries(self.section3, t.labels)
        return {
            "total_name": self.total_name,
            "total_basis": man["basis"],
            "iota": [[s(x) for x in row] for row in self.iota],
            "splitting": [[s(x) for x in row] for row in self.splitting],
            "total_pairing": man["pairing"],
            "total_triple": man["triple"],
            "u_phi": [s(x) for x in self.u_phi],
            "c_phi": [s(x) for x in self.c_phi],
            "sigma_ref": self.sigma_ref,
            "h2_total": self.h2_total,
            "gw_fiber": {"complete_below": "inf", "two_point": table_entries(gw2, t.labels),
                         "three_point": table_entries(gw3, t.labels)},
            "gw_section": section,
        }


def seidel_section_table(fiber, total, iota_labels, q_index):
    """Two-point section invariants of a loop whose Seidel element is the
    basis class q: n(iota a, iota b; sigma_ref + K) = (q * a)_K . b."""
    table = {}
    for a in range(fiber.dim):
        for cls, vec in fiber.product(q_index, a).items():
            for b in range(fiber.dim):
                v = sum(vec[i] * fiber.pairing[i][b] for i in range(fiber.dim))
                if v == 0:
                    continue
                args = tuple(sorted((total.idx(iota_labels[a]), total.idx(iota_labels[b]))))
                key = (args, cls)
                if key in table:
                    assert table[key] == v, "asymmetric section data"
                table[key] = v
    return table


def rotation_fibration():
    """Rotation loop of S^2; the total space is the one-point blow-up of CP^2."""
    f = sphere()
    labels = ["P", "M", "E", "pt"]
    degrees = [4, 2, 2, 0]
    pairing = [[Q(0)] * 4 for _ in range(4)]
    pairing[0][3] = pairing[3][0] = Q(1)
    pairing[1][2] = pairing[2][1] = Q(1)
    pairing[2][2] = Q(-1)
    pt = [Q(0), Q(0), Q(0), Q(1)]
    cap = caps_from_pairing(labels, degrees, pairing, {
        ("M", "E"): pt, ("E", "E"): [-x for x in pt], ("M", "M"): [Q(0)] * 4})
    total = Manifold("CP2 blown up at a point", 2, list(zip(labels, degrees)), pairing, cap, None, 2)
    iota = [total.vec(M=1), total.vec(pt=1)]
    splitting = [total.vec(P=1), total.vec(E=1)]
    u_phi = [Q(0), Q(2), Q(-1), Q(0)]
    c_phi = [Q(0), Q(2), Q(-1), Q(0)]
    section2 = seidel_section_table(f, total, ["M", "pt"], f.idx("pt"))
    return Fibration(f, total, iota, splitting, u_phi, c_phi, "E",
                     {"generators": ["M", "E"], "spherical": [True, True]}, section2)


class RuledCohomology:
    """H^ev of the total space: generators l, m, v of degree 2 with
    l^2 = m^2 = 0, v^2 = 2 l m and the integral of l m v equal to 2."""

    monomials = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]

    @staticmethod
    def mul(x, y):
        out = {}
        for (a, ca) in x.items():
            for (b, cb) in y.items():
                e = [a[i] + b[i] for i in range(3)]
                c = ca * cb
                while e[2] >= 2:
                    e[2] -= 2
                    e[0] += 1
                    e[1] += 1
                    c *= 2
                if e[0] >= 2 or e[1] >= 2:
                    continue
                out[tuple(e)] = out.get(tuple(e), Q(0)) + c
        return {k: v for k, v in out.items() if v != 0}

    @staticmethod
    def integral(x):
        return 2 * x.get((1, 1, 1), Q(0))


def ruled_fibration(kappa):
    f = ruled_fiber(kappa)
    R = RuledCohomology
    one, l, m, v = {(0, 0, 0): Q(1)}, {(1, 0, 0): Q(1)}, {(0, 1, 0): Q(1)}, {(0, 0, 1): Q(1)}

    def comb(*terms):
        out = {}
        for c, x in terms:
            for k, val in x.items():
                out[k] = out.get(k, Q(0)) + Q(c) * val
        return {k: val for k, val in out.items() if val != 0}

    lm, lv, mv = R.mul(l, m), R.mul(l, v), R.mul(m, v)
    lmv = R.mul(lm, v)
    h = Q(1, 2)
    duals = {
        "P": one,
        "M": m,
        "Z+": comb((h, l), (h, m), (h, v)),
        "Z-": comb((h, v), (-h, l), (-h, m)),
        "F": lm,
        "T-": comb((h, mv), (-h, lm)),
        "S-": comb((h, lv), (-h, lm)),
        "pt": comb((h, lmv)),
    }
    labels = list(duals)
    degrees = [6, 4, 4, 4, 2, 2, 2, 0]
    d = len(labels)
    pairing = [[R.integral(R.mul(duals[a], duals[b])) for b in labels] for a in labels]
    mono = R.monomials
    basis_matrix = [[duals[lab].get(mo, Q(0)) for lab in labels] for mo in mono]

    def to_basis(x):
        return solve(basis_matrix, [x.get(mo, Q(0)) for mo in mono])

    cap = [[to_basis(R.mul(duals[a], duals[b])) for b in labels] for a in labels]
    total = Manifold("total space over the ruled surface", 3, list(zip(labels, degrees)), pairing, cap, None, 2)

    a = 1 + Q(kappa)
    eps = -1 / (3 * a)
    u = comb((a, l), (eps, m), (1, v))
    u_phi = [R.integral(R.mul(u, duals[lab])) if deg == 2 else Q(0) for lab, deg in zip(labels, degrees)]
    c_phi = [R.integral(R.mul(v, duals[lab])) if deg == 2 else Q(0) for lab, deg in zip(labels, degrees)]
    iota = [total.vec(M=1), total.vec(F=1), total.vec(**{"T-": 1}), total.vec(pt=1)]
    splitting = [total.vec(P=1), total.vec(**{"Z+": 1, "Z-": -1, "M": -1}), total.vec(**{"Z-": 1}),
                 total.vec(**{"S-": 1})]
    section2 = seidel_section_table(f, total, ["M", "F", "T-", "pt"], f.idx("T-"))
    return Fibration(f, total, iota, splitting, u_phi, c_phi, "S-",
                     {"generators": ["F", "T-", "S-"], "spherical": [True, False, True]}, section2)


def document(manifold, fibration=None):
    doc = {"manifold": manifold.manifold_json(), "gw": manifold.gw_json()}
    if fibration is not None:
        doc["fibration"] = fibration.to_json()
    return doc


def write(path, doc):
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=Path(__file__).resolve().parent.parent / "fixtures", type=Path)
    parser.add_argument("--cli", help="qhfib executable used to synthesize product bundles")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    write(args.out / "s2.json", document(sphere()))
    write(args.out / "t2.json", document(torus()))
    write(args.out / "s2s2.json", document(sphere_product()))
    rot = rotation_fibration()
    write(args.out / "s2_rotation.json", document(rot.fiber, rot))
    for name, kappa in [("k1", 1), ("k2", 2), ("k1_2", Q(1, 2))]:
        fib = ruled_fibration(kappa)
        write(args.out / f"ruled_{name}.json", document(fib.fiber, fib))
    if args.cli:
        for src, dst in [("s2.json", "s2xs2.json"), ("t2.json", "t2xs2.json")]:
            subprocess.run([args.cli, "product-bundle", "--fixture", str(args.out / src),
                            "--out", str(args.out / dst)], check=True)
            print(f"wrote {args.out / dst}")


if __name__ == "__main__":
    main()
