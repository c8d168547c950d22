#include "support.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/validator.hpp"
#include "random_fiber.hpp"

using namespace qhtest;


TEST_CASE("graded commutativity, unit and degree laws at several cutoffs") {
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const auto doc = load(name);
        for (const char* c : {"0", "2", "5", "8"}) {
            CAPTURE(c);
            const auto report = check_quantum_laws(doc.manifold, R(c));
            CHECK(report.failures() == 0);
        }
    }
}

TEST_CASE("psi shifts by the Novikov monomial of the section offset") {
    for (const auto& name : fibration_fixtures()) {
        CAPTURE(name);
        const auto f = fibration(name);
        const auto s = seidel_data(f);
        const auto& lat = f.fiber.model.h2;
        const SectionClass base = sigma_phi(s);
        for (std::size_t g = 0; g < lat.rank(); ++g) {
            if (!lat.spherical()[g]) continue;
            for (int mult : {1, 2}) {
                Vec coords(lat.rank());
                coords[g] = mult;
                const NovKey A = lat.key(coords);
                const Rational c = 4;
                for (std::size_t i = 0; i < f.fiber.model.dim(); ++i) {
                    const QHClass a = QHClass::basis(f.fiber.model.dim(), i);
                    const QHClass lhs = psi(s, {base.offset + A}, a, c).truncated(c);
                    const QHClass rhs = psi(s, base, a, c + A.omega).shifted(A).truncated(c);
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("psi is a module map over the quantum ring") {
    for (const auto& name : fibration_fixtures()) {
        CAPTURE(name);
        const auto f = fibration(name);
        const auto s = seidel_data(f);
        CHECK(check_module_property(s, sigma_phi(s), R("6")).failures() == 0);
    }
}

TEST_CASE("Ic does not depend on the reference section") {
    for (const auto& name : fibration_fixtures()) {
        CAPTURE(name);
        const auto f = fibration(name);
        const Rational ic = invariant_Ic(f);
        const auto& lat = f.fiber.model.h2;
        for (std::size_t g = 0; g < lat.rank(); ++g) {
            if (!lat.spherical()[g]) continue;
            for (int mult : {1, -1, 3}) {
                FibrationModel moved = f;
                Vec coords(lat.rank());
                coords[g] = mult;
                const Vec shift = f.iota_of(f.fiber.model.h2_class(coords));
                for (std::size_t i = 0; i < moved.sigma_ref.size(); ++i) moved.sigma_ref[i] += shift[i];
                moved.sigma_label.clear();
                moved.finalize();
                CHECK(invariant_Ic(moved) == ic);
            }
        }
    }
}

TEST_CASE("corrected splittings are orthogonal on random pairings") {
    std::mt19937 rng(424242);
    int trials = 0;
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 60; ++rep) {
            const QuantumManifold qm = random_fiber(rng, n);
            const FibrationModel f = perturbed_product(rng, qm);
            const std::size_t d = qm.model.dim();
            const Matrix s = correct_splitting(f);
            const auto report = check_splitting(f, s);
            CHECK(report.failures() == 0);
            for (std::size_t i = 0; i < d; ++i) {
                Vec diff = s.column(i);
                axpy(diff, -1, f.splitting.column(i));
                bool vertical = true;
                for (std::size_t r = d; r < 2 * d; ++r) vertical = vertical && diff[r] == 0;
                CHECK(vertical);
            }
            ++trials;
        }
    }
    CHECK(trials >= 100);
}

TEST_CASE("product bundles of every fiber satisfy the structural relations") {
    for (const std::string name : {"s2", "t2", "s2s2", "ruled_k1"}) {
        CAPTURE(name);
        const auto doc = load(name);
        const FibrationModel f = product_fixture(doc.manifold);
        CHECK(verify_prop_gw(f, R("4")).failures() == 0);
        CHECK(verify_product_formula(f, R("4")).failures() == 0);
        CHECK(quantum_wang_check(f, R("4")).failures() == 0);
        CHECK(rho(f, R("4")) == QHClass::basis(f.fiber.model.dim(), f.fiber.model.fundamental));
    }
}
