#pragma once

#include "qhfib/fibration.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qhfib {

struct FixtureDocument {
    QuantumManifold manifold;
    std::optional<FibrationModel> fibration;

    bool operator==(const FixtureDocument& other) const = default;
};

// Parse failures are reported as ParseError with the JSON path of the
// offending value, or the line and column for malformed JSON.
FixtureDocument parse_fixture(const nlohmann::ordered_json& j);
FixtureDocument parse_fixture_text(const std::string& text);
FixtureDocument load_fixture(const std::string& path);

nlohmann::ordered_json fixture_to_json(const FixtureDocument& doc);
std::string dump_fixture(const FixtureDocument& doc);

nlohmann::ordered_json gw_table_to_json(const GWTable& table, const std::vector<std::string>& labels);

} // namespace qhfib
