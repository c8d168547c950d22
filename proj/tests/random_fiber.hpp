#pragma once

#include "qhfib/fibration.hpp"

#include <random>
#include <string>

namespace qhtest {

using namespace qhfib;

inline Rational random_entry(std::mt19937& rng) { return std::uniform_int_distribution<int>(-2, 2)(rng); }

inline Matrix random_invertible(std::mt19937& rng, std::size_t k, bool symmetric) {
    for (;;) {
        Matrix a(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = symmetric ? i : 0; j < k; ++j) {
                a(i, j) = random_entry(rng);
                if (symmetric) a(j, i) = a(i, j);
            }
        if (inverse(a)) return a;
    }
}

// Even-dimensional model with random middle pairings. For n = 2 the odd
// classes of degree 1 and 3 exercise the graded signs; for n = 3 the
// degree-2 classes sit in the middle of the total space.
inline QuantumManifold random_fiber(std::mt19937& rng, int n) {
    ManifoldModel m;
    m.name = "random";
    m.n = n;
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    m.basis.push_back({"1", 2 * n});
    if (n == 2) {
        for (std::size_t i = 0; i < k; ++i) m.basis.push_back({"a" + std::to_string(i), 3});
        for (std::size_t i = 0; i < k; ++i) m.basis.push_back({"b" + std::to_string(i), 2});
        for (std::size_t i = 0; i < k; ++i) m.basis.push_back({"c" + std::to_string(i), 1});
    } else {
        for (std::size_t i = 0; i < k; ++i) m.basis.push_back({"a" + std::to_string(i), 4});
        for (std::size_t i = 0; i < k; ++i) m.basis.push_back({"b" + std::to_string(i), 2});
    }
    m.basis.push_back({"pt", 0});
    const std::size_t d = m.basis.size();
    m.pairing = Matrix(d, d);
    m.pairing(0, d - 1) = m.pairing(d - 1, 0) = 1;
    if (n == 2) {
        const Matrix mid = random_invertible(rng, k, true);
        const Matrix odd = random_invertible(rng, k, false);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                m.pairing(1 + k + i, 1 + k + j) = mid(i, j);
                m.pairing(1 + i, 1 + 2 * k + j) = odd(i, j);
                m.pairing(1 + 2 * k + j, 1 + i) = -odd(i, j);
            }
    } else {
        const Matrix a = random_invertible(rng, k, false);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m.pairing(1 + i, 1 + k + j) = m.pairing(1 + k + j, 1 + i) = a(i, j);
    }
    m.has_triple = true;
    m.cap.assign(d, std::vector<Vec>(d, Vec(d)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == 0) m.cap[i][j][j] = 1;
            else if (j == 0) m.cap[i][j][i] = 1;
            else if (m.basis[i].degree + m.basis[j].degree == 2 * n) m.cap[i][j][d - 1] = m.pairing(i, j);
        }
    std::vector<std::string> gens;
    Vec omega, c1;
    std::vector<bool> spherical;
    for (const auto& b : m.basis)
        if (b.degree == 2) {
            gens.push_back(b.label);
            omega.push_back(1 + random_entry(rng) * random_entry(rng));
            c1.push_back(0);
            spherical.push_back(false);
        }
    m.h2 = H2Lattice(gens, omega, c1, spherical);
    m.N = 0;
    m.finalize();
    std::vector<int> degrees;
    for (const auto& b : m.basis) degrees.push_back(b.degree);
    QuantumManifold qm{m, GWTable(degrees, m.h2, std::nullopt)};
    qm.gw.declare(3);
    return qm;
}

// M x S^2 with the primed splitting moved by random vertical classes of
// the same degree, so that correct_splitting has work to do.
inline FibrationModel perturbed_product(std::mt19937& rng, const QuantumManifold& qm) {
    FibrationModel f = product_fixture(qm);
    const std::size_t d = qm.model.dim();
    for (std::size_t i = 0; i < d; ++i) {
        Vec col = f.splitting.column(i);
        for (std::size_t k = 0; k < d; ++k)
            if (qm.model.basis[k].degree == qm.model.basis[i].degree + 2) axpy(col, random_entry(rng), f.iota.column(k));
        f.splitting.set_column(i, col);
    }
    return f;
}

} // namespace qhtest
