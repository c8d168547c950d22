#include "qhfib/report.hpp"

#include "qhfib/errors.hpp"

#include <sstream>

namespace qhfib {

std::string status_name(CheckStatus status) {
    switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    }
    return "fail";
}

void VerificationReport::expect_equal(const std::string& label, const std::string& instance, const Rational& lhs,
                                      const Rational& rhs) {
    record(label, instance, to_string(lhs), to_string(rhs), lhs == rhs);
}

void VerificationReport::expect_true(const std::string& label, const std::string& instance, bool ok,
                                     const std::string& detail) {
    record(label, instance, ok ? "true" : "false", "true", ok);
    if (!ok && !detail.empty()) checks.back().reason = detail;
}

void VerificationReport::record(const std::string& label, const std::string& instance, std::string lhs,
                                std::string rhs, bool pass) {
    checks.push_back({label, instance, std::move(lhs), std::move(rhs), pass ? CheckStatus::pass : CheckStatus::fail, {}});
}

void VerificationReport::skip(const std::string& label, const std::string& instance, const std::string& reason) {
    checks.push_back({label, instance, "", "", CheckStatus::skip, "skipped: insufficient data (" + reason + ")"});
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::size_t VerificationReport::count(CheckStatus status) const {
    std::size_t c = 0;
    for (const auto& ch : checks)
        if (ch.status == status) ++c;
    return c;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["cutoff"] = to_string(cutoff);
    j["table_completeness"] = level_to_string(table_completeness);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["label"] = c.label;
        e["instance"] = c.instance;
        e["lhs"] = c.lhs;
        e["rhs"] = c.rhs;
        e["status"] = status_name(c.status);
        if (!c.reason.empty()) e["reason"] = c.reason;
        j["checks"].push_back(std::move(e));
    }
    j["summary"] = {{"pass", count(CheckStatus::pass)},
                    {"fail", count(CheckStatus::fail)},
                    {"skip", count(CheckStatus::skip)}};
    return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    r.cutoff = parse_rational(j.at("cutoff").get<std::string>());
    r.table_completeness = parse_level(j.at("table_completeness").get<std::string>());
    for (const auto& e : j.at("checks")) {
        Check c;
        c.label = e.at("label").get<std::string>();
        c.instance = e.at("instance").get<std::string>();
        c.lhs = e.at("lhs").get<std::string>();
        c.rhs = e.at("rhs").get<std::string>();
        const auto s = e.at("status").get<std::string>();
        if (s == "pass") c.status = CheckStatus::pass;
        else if (s == "fail") c.status = CheckStatus::fail;
        else if (s == "skip") c.status = CheckStatus::skip;
        else throw ParseError("unknown check status '" + s + "'");
        if (e.contains("reason")) c.reason = e.at("reason").get<std::string>();
        r.checks.push_back(std::move(c));
    }
    return r;
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::pass) continue;
        out << status_name(c.status) << "  " << c.label;
        if (!c.instance.empty()) out << "  [" << c.instance << "]";
        if (c.status == CheckStatus::fail) out << "  lhs=" << c.lhs << "  rhs=" << c.rhs;
        if (!c.reason.empty()) out << "  " << c.reason;
        out << '\n';
    }
    out << "suite " << suite << ": " << count(CheckStatus::pass) << " passed, " << failures() << " failed, "
        << count(CheckStatus::skip) << " skipped\n";
    return out.str();
}

} // namespace qhfib
