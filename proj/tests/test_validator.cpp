#include "support.hpp"

#include "qhfib/errors.hpp"
#include "qhfib/validator.hpp"

#include <algorithm>

using namespace qhtest;

TEST_CASE("suite names start with the fiber suites and end with all") {
    const auto& names = suite_names();
    REQUIRE(!names.empty());
    CHECK(names.front() == "model");
    CHECK(names.back() == "all");
    for (const char* s : {"quantum", "assoc", "axioms", "prop-gw", "wang", "module", "compose", "splitting",
                          "invariants", "ring-split", "rho", "product"})
        CHECK(std::find(names.begin(), names.end(), s) != names.end());
}

TEST_CASE("unknown suites and negative cutoffs are rejected") {
    const auto s2 = load("s2").manifold;
    CHECK_THROWS_AS(run_suite(s2, "nonsense", R("4")), UnknownSuite);
    CHECK_THROWS_AS(run_suite(s2, "wang", R("4")), UnknownSuite);
    CHECK_THROWS_AS(run_suite(s2, "model", R("-1")), CutoffTooSmall);
    const auto f = fibration("ruled_k1");
    CHECK_THROWS_AS(run_suite(f, "nonsense", R("4")), UnknownSuite);
    CHECK_THROWS_AS(run_suite(f, "rho", R("-1/2")), CutoffTooSmall);
}

TEST_CASE("every shipped fixture passes the full campaign") {
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const auto doc = load(name);
        const auto report = doc.fibration ? run_suite(*doc.fibration, "all", R("6"))
                                          : run_suite(doc.manifold, "all", R("6"));
        CHECK(report.failures() == 0);
        CHECK(report.count(CheckStatus::pass) > 0);
        if (report.failures() != 0) MESSAGE(report.to_text());
    }
}

TEST_CASE("each named suite runs on its own") {
    const auto f = fibration("s2xs2");
    for (const auto& suite : suite_names()) {
        CAPTURE(suite);
        const auto report = run_suite(f, suite, R("4"));
        CHECK(report.suite == suite);
        CHECK(report.failures() == 0);
    }
}

TEST_CASE("incomplete tables become skips") {
    auto f = fibration("ruled_k1");
    f.gw_section.set_complete_below(R("0"));
    f.finalize();
    const auto report = run_suite(f, "rho", R("4"));
    CHECK(report.failures() == 0);
    CHECK(report.count(CheckStatus::skip) > 0);
}

TEST_CASE("ring split hypothesis failure is a skip on the ruled surface") {
    const auto report = run_suite(fibration("ruled_k2"), "ring-split", R("4"));
    CHECK(report.failures() == 0);
    CHECK(report.count(CheckStatus::skip) > 0);
}

TEST_CASE("reports round-trip through JSON and are deterministic") {
    const auto f = fibration("s2_rotation");
    const auto a = run_suite(f, "all", R("4"));
    const auto b = run_suite(f, "all", R("4"));
    CHECK(a.to_json().dump() == b.to_json().dump());
    const auto back = VerificationReport::from_json(a.to_json());
    CHECK(back.to_json().dump() == a.to_json().dump());
    CHECK(back.failures() == a.failures());
    CHECK(back.checks.size() == a.checks.size());
}

TEST_CASE("model suite catches an asymmetric pairing") {
    auto m = load("s2s2").manifold.model;
    m.pairing(1, 2) += 1;
    m.finalize();
    CHECK(check_model(m).failures() > 0);
}
