#pragma once

#include "qhfib/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qhfib {

enum class CheckStatus { pass, fail, skip };

struct Check {
    std::string label;
    std::string instance;
    std::string lhs;
    std::string rhs;
    CheckStatus status = CheckStatus::pass;
    std::string reason;
};

struct VerificationReport {
    std::string suite;
    Rational cutoff;
    Level table_completeness;
    std::vector<Check> checks;

    // Records lhs == rhs; the comparison is made on the exact values.
    template <class T, class Fmt>
    void expect_equal(const std::string& label, const std::string& instance, const T& lhs, const T& rhs, Fmt fmt) {
        record(label, instance, fmt(lhs), fmt(rhs), lhs == rhs);
    }
    void expect_equal(const std::string& label, const std::string& instance, const Rational& lhs, const Rational& rhs);
    void expect_true(const std::string& label, const std::string& instance, bool ok, const std::string& detail = "");
    void record(const std::string& label, const std::string& instance, std::string lhs, std::string rhs, bool pass);
    void skip(const std::string& label, const std::string& instance, const std::string& reason);
    void merge(const VerificationReport& other);

    std::size_t count(CheckStatus status) const;
    std::size_t failures() const { return count(CheckStatus::fail); }
    bool ok() const { return failures() == 0; }

    nlohmann::ordered_json to_json() const;
    static VerificationReport from_json(const nlohmann::ordered_json& j);
    // Failures and skips, one per line, followed by a summary line.
    std::string to_text() const;
};

std::string status_name(CheckStatus status);

} // namespace qhfib
