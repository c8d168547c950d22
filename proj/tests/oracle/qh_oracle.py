#!/usr/bin/env python3
"""Independent oracle for the quantum homology fixtures.

Reads fixture JSON directly and recomputes, with sympy, the values the C++
tests compare against: all basis quantum products, inverses of Seidel
elements over Laurent polynomials, the normalized section offsets and the
characteristic numbers of the total spaces.
"""

import argparse
import json
import sys
from pathlib import Path

import sympy as sp


def rat(text):
    return sp.Rational(text)


def fmt(x):
    x = sp.Rational(x)
    return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"


class Model:
    def __init__(self, doc):
        man = doc["manifold"]
        self.labels = [b["label"] for b in man["basis"]]
        self.degrees = [b["degree"] for b in man["basis"]]
        self.n = man["n"]
        self.gens = man["h2"]["generators"]
        self.omega = [rat(x) for x in man["h2"]["omega"]]
        d = len(self.labels)
        self.pairing = sp.zeros(d, d)
        for a, b, v in man["pairing"]:
            self.pairing[self.labels.index(a), self.labels.index(b)] = rat(v)
            self.pairing[self.labels.index(b), self.labels.index(a)] = rat(v)
        top = self.degrees.index(2 * self.n)
        self.cap = {}
        for a, b, c, v in man.get("triple", []):
            i, j, k = (self.labels.index(x) for x in (a, b, c))
            self.cap.setdefault((i, j), sp.zeros(d, 1))[k] = rat(v)
            self.cap.setdefault((j, i), sp.zeros(d, 1))[k] = rat(v)
        for i in range(d):
            for key in ((top, i), (i, top)):
                if key not in self.cap:
                    self.cap[key] = sp.zeros(d, 1)
                    self.cap[key][i] = 1
        self.gw3 = {}
        for e in doc.get("gw", {}).get("three_point", []):
            args = tuple(sorted(self.labels.index(x) for x in e["args"]))
            self.gw3[(args, tuple(rat(c) for c in e["class"]))] = rat(e["value"])
        self.dim = d
        self.top = top

    def n3(self, args, cls):
        return self.gw3.get((tuple(sorted(args)), cls), 0)

    def classes(self):
        return sorted({c for (_, c) in self.gw3}, key=lambda c: sum(w * x for w, x in zip(self.omega, c)))

    def product(self, i, j, q):
        """e_i * e_j with e^{-B} replaced by the monomial q(B)."""
        d = self.dim
        out = self.cap.get((i, j), sp.zeros(d, 1)) * 1
        pinv = self.pairing.T.inv()
        for cls in self.classes():
            vals = sp.Matrix([self.n3((i, j, k), cls) for k in range(d)])
            if any(vals):
                out += (pinv * vals) * q(cls)
        return out


def laurent_terms(expr, symbols):
    """Map of exponent tuples (as powers of e^{-G}) to coefficients."""
    poly = sp.Poly(sp.expand(expr * sp.Mul(*[s ** 50 for s in symbols])), *symbols)
    return {tuple(sp.Integer(e) - 50 for e in monom): c for monom, c in poly.terms()}


def class_text(model, vec_terms):
    """vec_terms: list of (coords of exponent, basis index, coefficient)."""
    parts = []
    for coords, idx, c in sorted(vec_terms, key=lambda t: (-sum(w * x for w, x in zip(model.omega, t[0])), t[1])):
        if c == 0:
            continue
        exp = " + ".join(f"({fmt(x)}){g}" for x, g in zip(coords, model.gens) if x != 0)
        term = f"{fmt(abs(c))}*{model.labels[idx]}" + (f"@e^{{{exp}}}" if exp else "")
        parts.append(("-" if c < 0 else "+", term))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def vector_to_text(model, vec, symbols, shift=None):
    terms = []
    for idx in range(model.dim):
        if vec[idx] == 0:
            continue
        for powers, c in laurent_terms(vec[idx], symbols).items():
            coords = [-p for p in powers]
            if shift:
                coords = [a + b for a, b in zip(coords, shift)]
            terms.append((coords, idx, c))
    return class_text(model, terms)


def fiber_products(model):
    symbols = sp.symbols(" ".join(f"q{g}" for g in range(len(model.gens))) + " _pad")[: len(model.gens)]

    def q(cls):
        return sp.Mul(*[s ** int(c) for s, c in zip(symbols, cls)])

    out = []
    for i in range(model.dim):
        for j in range(model.dim):
            out.append({"a": model.labels[i], "b": model.labels[j],
                        "value": vector_to_text(model, model.product(i, j, q), symbols)})
    return out, symbols, q


def inverse_of_basis(model, idx, symbols, q, shift):
    """Inverse of e_idx e^{shift} in the Laurent polynomial ring."""
    d = model.dim
    mat = sp.zeros(d, d)
    for j in range(d):
        mat[:, j] = model.product(idx, j, q)
    rhs = sp.zeros(d, 1)
    rhs[model.top] = 1
    x = sp.simplify(mat.LUsolve(rhs))
    return vector_to_text(model, x, symbols, [-s for s in shift])


class Fibration:
    def __init__(self, doc, model):
        fib = doc["fibration"]
        self.labels = [b["label"] for b in fib["total_basis"]]
        self.degrees = [b["degree"] for b in fib["total_basis"]]
        d = len(self.labels)
        self.pairing = sp.zeros(d, d)
        for a, b, v in fib["total_pairing"]:
            self.pairing[self.labels.index(a), self.labels.index(b)] = rat(v)
            self.pairing[self.labels.index(b), self.labels.index(a)] = rat(v)
        self.u = sp.Matrix([rat(x) for x in fib["u_phi"]])
        self.c = sp.Matrix([rat(x) for x in fib["c_phi"]])
        self.sigma = self.labels.index(fib["sigma_ref"])
        self.iota = [sp.Matrix([rat(x) for x in row]) for row in fib["iota"]]
        self.model = model
        self.dim = d
        # cohomology classes dual to the basis: alpha_k(e_j) = delta_kj
        self.pinv = self.pairing.inv()
        self.cap = {}
        for a, b, c, v in fib["total_triple"]:
            i, j, k = (self.labels.index(x) for x in (a, b, c))
            self.cap.setdefault((i, j), sp.zeros(d, 1))[k] = rat(v)
            self.cap.setdefault((j, i), sp.zeros(d, 1))[k] = rat(v)
        top = self.degrees.index(max(self.degrees))
        for i in range(d):
            for key in ((top, i), (i, top)):
                if key not in self.cap:
                    self.cap[key] = sp.zeros(d, 1)
                    self.cap[key][i] = 1
        self.top = top

    def pd(self, covector):
        return self.pairing.T.inv() * covector

    def cap_vec(self, a, b):
        out = sp.zeros(self.dim, 1)
        for i in range(self.dim):
            for j in range(self.dim):
                if a[i] != 0 and b[j] != 0:
                    out += a[i] * b[j] * self.cap.get((i, j), sp.zeros(self.dim, 1))
        return out

    def section_offset(self):
        """Multiple t of the first spherical fiber generator with u(sigma + t B) = 0."""
        m = self.model
        g = 0
        return -self.u[self.sigma] / m.omega[g]

    def characteristic_numbers(self):
        n = self.model.n
        pu, pc = self.pd(self.u), self.pd(self.c)
        point = self.degrees.index(0)
        values = []
        for k in range(n + 2):
            x = sp.zeros(self.dim, 1)
            x[self.top] = 1
            for _ in range(k):
                x = self.cap_vec(x, pc)
            for _ in range(n + 1 - k):
                x = self.cap_vec(x, pu)
            values.append(fmt(x[point]))
        return values


def compute(fixtures):
    out = {}
    for path in fixtures:
        doc = json.loads(Path(path).read_text())
        model = Model(doc)
        products, symbols, q = fiber_products(model)
        entry = {"products": products}
        if "fibration" in doc and Path(path).stem.startswith("ruled"):
            fib = Fibration(doc, model)
            delta = fib.section_offset()
            entry["delta"] = fmt(delta)
            entry["rho"] = class_text(model, [([delta, 0], model.labels.index("T-"), 1)])
            entry["rho_inverse"] = inverse_of_basis(model, model.labels.index("T-"), symbols, q, [delta, 0])
            entry["Ik"] = fib.characteristic_numbers()
        out[Path(path).stem] = entry
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("fixtures", nargs="+")
    parser.add_argument("--out")
    args = parser.parse_args()
    text = json.dumps(compute(args.fixtures), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
