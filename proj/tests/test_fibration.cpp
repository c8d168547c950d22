#include "support.hpp"

#include "qhfib/errors.hpp"

using namespace qhtest;

namespace {

struct RuledCase {
    const char* fixture;
    const char* kappa;
};

const RuledCase kRuled[] = {{"ruled_k1", "1"}, {"ruled_k2", "2"}, {"ruled_k1_2", "1/2"}};

QHClass fiber_class(const FibrationModel& f, const std::string& text) { return cls(f.fiber.model, text); }

} // namespace

TEST_CASE("Seidel operation of the ruled surface at the reference section") {
    const auto f = fibration("ruled_k1");
    const auto s = seidel_data(f);
    const SectionClass ref{};
    CHECK(s.format(ref) == "S-");
    CHECK(psi(s, ref, fiber_class(f, "1"), R("6")) == fiber_class(f, "T-"));
    CHECK(q_sigma(s, ref, R("6")) == fiber_class(f, "T-"));
    for (const char* a : {"1", "F", "T-", "pt"})
        CHECK(psi(s, ref, fiber_class(f, a), R("6")) ==
              quantum_product(f.fiber, fiber_class(f, "T-"), fiber_class(f, a), R("6")));
    CHECK(check_module_property(s, ref, R("6")).failures() == 0);
}

TEST_CASE("no section invariants through [M] in the class S+") {
    const auto f = fibration("ruled_k1");
    const NovKey F = f.fiber.model.h2.key({R("1"), R("0")});
    const std::size_t M = f.total.index("M");
    for (std::size_t a = 0; a < f.total.dim(); ++a) CHECK(f.gw_section.lookup({M, a}, F) == 0);
}

TEST_CASE("normalized section, Seidel element and invariants of the ruled surface") {
    for (const auto& c : kRuled) {
        CAPTURE(c.fixture);
        const auto f = fibration(c.fixture);
        const Rational k = R(c.kappa);
        const Rational delta = (4 + 3 * k) / (6 + 6 * k);
        const SectionClass sigma = sigma_phi(f);
        CHECK(sigma.offset == f.fiber.model.h2.key({delta, R("0")}));
        const auto s = seidel_data(f);
        CHECK(s.u(sigma) == 0);
        CHECK(s.format(sigma) == "S- + (" + to_string(delta) + ")F");
        const QHClass r = rho(f, R("6"));
        CHECK(r == fiber_class(f, "T-@e^{(" + to_string(delta) + ")F}"));
        CHECK(rho_shape_check(f.fiber.model, r).kind == RhoShape::Kind::other);
        const auto inv = is_unit(f.fiber, r, R("6"));
        REQUIRE(inv.has_value());
        CHECK(*inv == fiber_class(f, "F@e^{(" + to_string(1 - delta) + ")F} + T-@e^{(" + to_string(1 - delta) + ")F}"));

        CHECK(invariant_Ic(f) == 1);
        const Vec iu = invariant_Iu(f);
        Vec expected(f.total.dim());
        expected[f.total.index("T-")] = -4 / (3 * (1 + k));
        CHECK(iu == expected);
        CHECK(format_Iu(f, iu) == "(" + to_string(-4 / (3 * (1 + k))) + ")T-");
        CHECK(invariant_Ik(f, 0) == 0);
        CHECK(invariant_Ik(f, 1) == R("8/3"));
        CHECK(invariant_Ik(f, 2) == 4);
        CHECK(invariant_Ik(f, 3) == 4);
    }
}

TEST_CASE("rotation of the sphere") {
    const auto f = fibration("s2_rotation");
    const QHClass r = rho(f, R("4"));
    CHECK(r == fiber_class(f, "pt@e^{(1/2)A}"));
    CHECK(quantum_product(f.fiber, r, r, R("4")) == fiber_class(f, "1"));
    CHECK(rho_shape_check(f.fiber.model, r).kind == RhoShape::Kind::other);
    CHECK(invariant_Ic(f) == 1);
}

TEST_CASE("structural suites are clean on every fibration fixture") {
    for (const auto& name : fibration_fixtures()) {
        CAPTURE(name);
        const auto f = fibration(name);
        CHECK(quantum_wang_check(f, R("6")).failures() == 0);
        CHECK(verify_prop_gw(f, R("6")).failures() == 0);
        CHECK(check_splitting(f, correct_splitting(f)).failures() == 0);
    }
}

TEST_CASE("restriction to the fiber") {
    const auto f = fibration("ruled_k1");
    const auto& p = f.total;
    CHECK(restrict_to_fiber(f, unit_vec(p.dim(), p.index("Z-"))) == unit_vec(4, f.fiber.model.index("T-")));
    CHECK(restrict_to_fiber(f, unit_vec(p.dim(), p.index("S-"))) == unit_vec(4, f.fiber.model.index("pt")));
    CHECK(restrict_to_fiber(f, unit_vec(p.dim(), p.index("Z+"))) == parse_vec(f.fiber.model.labels(), "F + T-"));
    CHECK(is_zero(restrict_to_fiber(f, unit_vec(p.dim(), p.index("F")))));
}

TEST_CASE("product bundle") {
    const auto s2 = load("s2");
    const FibrationModel f = product_fixture(s2.manifold);
    CHECK(f == fibration("s2xs2"));
    CHECK(is_product_bundle(f));
    CHECK_FALSE(is_product_bundle(fibration("s2_rotation")));
    CHECK(verify_product_formula(f, R("6")).failures() == 0);
    CHECK(rho(f, R("6")) == fiber_class(f, "1"));
    for (const char* a : {"1", "pt"})
        CHECK(psi(f, sigma_phi(f), fiber_class(f, a), R("6")) == fiber_class(f, a));
    CHECK(is_zero(invariant_Iu(f)));
    CHECK(invariant_Ic(f) == 0);
}

TEST_CASE("nonsqueezing bound") {
    auto f = fibration("s2xs2");
    auto r = nonsqueezing_bound(f, R("2"), R("6"));
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == 2);
    CHECK(r.invariant == 1);
    const std::size_t M = f.total.index("1|pt"), pt = f.total.index("pt|pt");
    f.gw_section.set({M, M, pt}, sigma_phi(f).offset, 0);
    r = nonsqueezing_bound(f, R("2"), R("6"));
    CHECK_FALSE(r.bound.has_value());
    CHECK(r.reason == "invariant vanishes");
    CHECK_THROWS_AS(nonsqueezing_bound(fibration("ruled_k1"), R("2"), R("6")), TableIncomplete);
}

TEST_CASE("ring splitting") {
    const auto t = fibration("t2xs2");
    for (SplitMode mode : {SplitMode::vertical, SplitMode::horizontal_unit, SplitMode::monomial_rho}) {
        CAPTURE(split_mode_name(mode));
        const auto r = ring_split_check(t, R("4"), mode);
        CHECK(r.splits);
        CHECK(r.mu == 1);
        CHECK(r.Ic == 0);
        CHECK(is_zero(r.Iu));
        CHECK(r.s_A == t.splitting);
    }
    CHECK_THROWS_AS(ring_split_check(fibration("ruled_k1"), R("6")), HypothesisFailed);
    try {
        ring_split_check(fibration("ruled_k1"), R("6"));
    } catch (const HypothesisFailed& e) {
        CHECK_FALSE(e.entries().empty());
    }
}

TEST_CASE("splitting correction") {
    const auto f = fibration("ruled_k1");
    const Matrix s = correct_splitting(f);
    CHECK(check_splitting(f, s).failures() == 0);
    FibrationModel broken = f;
    Vec col = broken.splitting.column(3);
    col[broken.total.index("Z-")] += 1;
    broken.splitting.set_column(3, col);
    CHECK_THROWS_AS(correct_splitting(broken), PrimingInvalid);
}

TEST_CASE("inverse loop and composition") {
    for (const auto& name : fibration_fixtures()) {
        CAPTURE(name);
        const auto f = fibration(name);
        const auto s = seidel_data(f);
        const Rational cutoff = 4;
        const auto inv = mirror(s, cutoff);
        CHECK(inv.u_ref == -s.u_ref);
        CHECK(inv.c_ref == -s.c_ref);
        const auto id = compose(s, inv, cutoff);
        CHECK(id.report.failures() == 0);
        for (std::size_t i = 0; i < f.fiber.model.dim(); ++i) {
            const QHClass a = QHClass::basis(f.fiber.model.dim(), i);
            CHECK(psi(id.composite, sigma_phi(id.composite), a, cutoff).truncated(cutoff) == a);
        }
        const auto twice = compose(s, s, cutoff);
        CHECK(twice.report.failures() == 0);
        const QHClass r = rho(s, cutoff + 4);
        CHECK(rho(twice.composite, cutoff) == quantum_product(f.fiber, r, r, cutoff + 4).truncated(cutoff));
    }
}

TEST_CASE("section table entries off the dimension count are rejected") {
    auto f = fibration("ruled_k1");
    const std::size_t M = f.total.index("M");
    f.gw_section.add({M, M}, NovKey{}, 1);
    CHECK_THROWS_AS(psi(f, SectionClass{}, fiber_class(f, "1"), R("6")), DimensionRuleViolation);
}
