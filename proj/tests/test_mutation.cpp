#include "support.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/validator.hpp"

using namespace qhtest;

namespace {

const Rational kCutoff = 6;

std::size_t campaign_failures(const FixtureDocument& doc) {
    try {
        if (doc.fibration) {
            FibrationModel f = *doc.fibration;
            f.finalize();
            return run_suite(f, "all", kCutoff).failures();
        }
        return run_suite(doc.manifold, "all", kCutoff).failures();
    } catch (const Error&) {
        // A mutation that breaks loading-level consistency is detected too.
        return 1;
    }
}

// Bumps every stored entry of table, one at a time, on a fresh copy.
template <class Select>
void mutate_each(const FixtureDocument& doc, Select select, const std::string& tag) {
    FixtureDocument probe = doc;
    const GWTable table = select(probe);
    for (std::size_t arity : table.arities()) {
        for (const auto& e : table.entries(arity)) {
            FixtureDocument copy = doc;
            GWTable& t = select(copy);
            t.set(e.args, e.key, e.value + 1);
            CAPTURE(tag);
            CAPTURE(table.describe(e, {}));
            CHECK(campaign_failures(copy) > 0);
        }
    }
}

} // namespace

TEST_CASE("every single-entry mutation is detected") {
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const FixtureDocument doc = load(name);
        REQUIRE(campaign_failures(doc) == 0);
        if (doc.fibration) {
            mutate_each(doc, [](FixtureDocument& d) -> GWTable& { return d.fibration->fiber.gw; }, "fiber");
            mutate_each(doc, [](FixtureDocument& d) -> GWTable& { return d.fibration->gw_fiber; }, "vertical");
            // A section table holding only two-point entries encodes nothing but
            // the Seidel element, and any unit with the same degree is an equally
            // consistent answer. Those tables are pinned by exact values instead.
            if (doc.fibration->gw_section.has(3))
                mutate_each(doc, [](FixtureDocument& d) -> GWTable& { return d.fibration->gw_section; }, "section");
        } else {
            mutate_each(doc, [](FixtureDocument& d) -> GWTable& { return d.manifold.gw; }, "gw");
        }
    }
}

TEST_CASE("pairing and triple mutations are detected") {
    for (const char* name : {"s2s2", "ruled_k1"}) {
        CAPTURE(name);
        const FixtureDocument doc = load(name);
        const auto& m = doc.manifold.model;
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) {
                if (m.pairing(i, j) == 0) continue;
                FixtureDocument copy = doc;
                copy.manifold.model.pairing(i, j) += 1;
                if (copy.fibration) copy.fibration->fiber.model = copy.manifold.model;
                CHECK(campaign_failures(copy) > 0);
            }
    }
}

TEST_CASE("tampered three-point invariant on S2 x S2 breaks associativity") {
    auto qm = load("s2s2").manifold;
    const auto& m = qm.model;
    const std::size_t p = m.index("ptxpt");
    const NovKey ab = m.h2.key({1, 1});
    REQUIRE(qm.gw.stored({p, p, p}, ab) == 1);
    CHECK(verify_associativity(qm, R("6")).failures() == 0);
    qm.gw.set({p, p, p}, ab, 2);
    const auto report = verify_associativity(qm, R("6"));
    CHECK(report.failures() > 0);
    CHECK(run_suite(qm, "assoc", R("6")).failures() > 0);
}

TEST_CASE("killing a class in iota makes the Wang sequence inexact") {
    for (const std::string name : {"ruled_k1", "s2_rotation", "t2xs2"}) {
        CAPTURE(name);
        auto f = fibration(name);
        f.iota.set_column(f.fiber.model.point, zero_vec(f.total.dim()));
        std::size_t failures = 0;
        try {
            failures = quantum_wang_check(f, R("4")).failures();
        } catch (const Error&) {
            failures = 1;
        }
        CHECK(failures > 0);
    }
}

TEST_CASE("a vertical invariant on two fiber classes is flagged") {
    auto f = fibration("s2xs2");
    const auto& m = f.fiber.model;
    const std::size_t a = f.total.index("pt|pt");
    const std::size_t v = f.total.index("1|S2");
    const NovKey A = m.h2.key({1});
    f.gw_fiber.add({a, a, v}, A, 1);
    const auto report = verify_prop_gw(f, R("4"));
    CHECK(report.failures() > 0);
    bool witness = false;
    for (const auto& c : report.checks)
        if (c.status == CheckStatus::fail && c.instance.find("pt|pt") != std::string::npos) witness = true;
    CHECK(witness);
}
