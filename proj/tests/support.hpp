#pragma once

#include "qhfib/expression.hpp"
#include "qhfib/fixture.hpp"

#include <doctest.h>

#include <ostream>
#include <string>
#include <vector>

namespace qhfib {

inline std::ostream& operator<<(std::ostream& os, const QHClass& q) {
    os << "QHClass{";
    for (const auto& [k, v] : q.terms()) {
        os << "[" << k.omega << "," << k.chern << ":";
        for (const auto& x : v) os << " " << x;
        os << "]";
    }
    return os << "}";
}

} // namespace qhfib

namespace qhtest {

using namespace qhfib;

inline std::string fixture_path(const std::string& name) { return std::string(QHFIB_FIXTURE_DIR) + "/" + name + ".json"; }

inline FixtureDocument load(const std::string& name) { return load_fixture(fixture_path(name)); }

inline FibrationModel fibration(const std::string& name) { return *load(name).fibration; }

inline const std::vector<std::string>& fibration_fixtures() {
    static const std::vector<std::string> names = {"ruled_k1", "ruled_k2", "ruled_k1_2",
                                                   "s2_rotation",  "s2xs2",        "t2xs2"};
    return names;
}

inline const std::vector<std::string>& all_fixtures() {
    static const std::vector<std::string> names = {"s2",    "t2",           "s2s2",        "ruled_k1",
                                                   "ruled_k2", "ruled_k1_2", "s2_rotation", "s2xs2",
                                                   "t2xs2"};
    return names;
}

inline QHClass cls(const ManifoldModel& m, const std::string& text) { return parse_class(m, text); }

inline Rational R(const std::string& text) { return parse_rational(text); }

} // namespace qhtest
