#include "support.hpp"

#include "qhfib/errors.hpp"

#include <random>

using namespace qhtest;

namespace {

H2Lattice ruled_lattice() { return H2Lattice({"F", "T-"}, {R("2"), R("1")}, {R("2"), R("-1")}, {true, false}); }

NovikovElement random_element(std::mt19937& rng, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5), power(0, 3), chern(-1, 1);
    NovikovElement x;
    for (int t = 0; t < terms; ++t) {
        const int p = power(rng);
        Rational c(coef(rng), 1 + power(rng));
        c.canonicalize();
        x.add({Rational(-2 * p), Rational(chern(rng) - 2 * p)}, c);
    }
    return x;
}

} // namespace

TEST_CASE("rationals parse and print in lowest terms") {
    CHECK(to_string(R("6/4")) == "3/2");
    CHECK(to_string(R("-8/4")) == "-2");
    CHECK(to_string(R("(7/12)")) == "7/12");
    CHECK(R("0/5") == 0);
    CHECK_THROWS_AS(R("1/0"), ParseError);
    CHECK_THROWS_AS(R("x"), ParseError);
    CHECK(is_integer(R("4/2")));
    CHECK_FALSE(is_integer(R("1/3")));
}

TEST_CASE("completeness levels") {
    CHECK_FALSE(parse_level("inf").has_value());
    CHECK(level_to_string(parse_level("inf")) == "inf");
    CHECK(level_covers(parse_level("6"), R("6")));
    CHECK_FALSE(level_covers(parse_level("6"), R("13/2")));
    CHECK(level_covers(std::nullopt, R("1000")));
}

TEST_CASE("H2 lattice keys and canonical representatives") {
    const H2Lattice lat = ruled_lattice();
    const NovKey f = lat.key({R("1"), R("0")});
    CHECK(f.omega == 2);
    CHECK(f.chern == 2);
    CHECK(degree(f) == 4);
    CHECK(energy(-f) == 2);
    CHECK(lat.representative(lat.key({R("3"), R("-2")})) == Vec{R("3"), R("-2")});
    CHECK(lat.format(lat.key({R("7/12"), R("0")})) == "(7/12)F");
    CHECK(lat.format(-f) == "-F");
    CHECK(lat.parse_coords("(7/12)F - T-") == Vec{R("7/12"), R("-1")});
    CHECK(lat.parse_coords("2F/3") == Vec{R("2/3"), R("0")});
    CHECK_THROWS_AS(lat.parse_coords("G"), ParseError);
}

TEST_CASE("equivalent classes share a key") {
    // omega and c1 agree on A and B, so A - B is invisible to the Novikov ring.
    const H2Lattice lat({"A", "B"}, {R("2"), R("2")}, {R("2"), R("2")}, {true, true});
    CHECK(lat.key({R("1"), R("0")}) == lat.key({R("0"), R("1")}));
    CHECK(lat.representative(lat.key({R("0"), R("1")})) == Vec{R("1"), R("0")});
    NovikovElement x;
    x.add(lat.key({R("1"), R("0")}), 1);
    x.add(lat.key({R("0"), R("1")}), 1);
    CHECK(x.terms().size() == 1);
    CHECK(x.coefficient(lat.key({R("1"), R("0")})) == 2);
}

TEST_CASE("geometric series inverse") {
    const H2Lattice lat = ruled_lattice();
    const NovKey f = lat.key({R("1"), R("0")});
    NovikovElement x = NovikovElement::scalar(1);
    x.add(-f, -1);
    const NovikovElement y = nov_invert(x, R("6"));
    NovikovElement expected;
    for (int k = 0; k <= 3; ++k) expected.add(Rational(-k) * f, 1);
    CHECK(y == expected);
    CHECK(format_novikov(y, lat) == "1 + e^{-F} + e^{-2F} + e^{-3F}");
    CHECK(nov_mul(x, y, R("6")) == NovikovElement::scalar(1));
}

TEST_CASE("inversion errors") {
    const H2Lattice lat = ruled_lattice();
    CHECK_THROWS_AS(nov_invert(NovikovElement{}, R("1")), NotInvertible);
    CHECK_THROWS_AS(nov_invert(NovikovElement::scalar(2), R("-1")), CutoffTooSmall);
    NovikovElement tie = NovikovElement::scalar(1);
    tie.add({R("0"), R("1")}, 1);
    CHECK_THROWS_AS(nov_invert(tie, R("4")), NotInvertible);
}

TEST_CASE("Novikov ring axioms on random elements") {
    std::mt19937 rng(20261019);
    const Rational cutoff = 8;
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_element(rng, 3), y = random_element(rng, 3), z = random_element(rng, 2);
        CHECK(nov_mul(x, y) == nov_mul(y, x));
        CHECK(nov_mul(nov_mul(x, y), z) == nov_mul(x, nov_mul(y, z)));
        CHECK(nov_mul(x, nov_add(y, z)) == nov_add(nov_mul(x, y), nov_mul(x, z)));
        CHECK(nov_add(x, nov_neg(x)).is_zero());
        CHECK(nov_truncate(nov_mul(x, y), cutoff) == nov_mul(x, y, cutoff));
        for (const auto& [kx, cx] : x.terms())
            for (const auto& [ky, cy] : y.terms()) CHECK(degree(kx + ky) == degree(kx) + degree(ky));
    }
}

TEST_CASE("x times its inverse is one up to the cutoff") {
    std::mt19937 rng(7);
    const Rational cutoff = 10;
    int inverted = 0;
    for (int trial = 0; trial < 200; ++trial) {
        NovikovElement x = random_element(rng, 4);
        if (x.is_zero()) continue;
        NovikovElement y;
        try {
            y = nov_invert(x, cutoff);
        } catch (const NotInvertible&) {
            continue;
        }
        ++inverted;
        CHECK(nov_truncate(nov_mul(x, y), cutoff) == NovikovElement::scalar(1));
    }
    CHECK(inverted > 50);
}
