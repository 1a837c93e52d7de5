#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "khinch/common.hpp"

namespace khinch {

/// 17 significant digits: enough to round-trip any double, and a fixed
/// width-independent rendering so reports diff cleanly.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// RFC-4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

/// One verified case. `slack` is the signed margin against the allowed
/// tolerance: pass iff slack <= 0, and worst_slack below is the maximum.
struct CaseResult {
    std::string inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    double slack = 0.0;
};

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> metadata;  // emitted in order
    std::vector<CaseResult> cases;

    void add_case(std::string inputs, double lhs, double rhs, double slack) {
        cases.push_back({std::move(inputs), lhs, rhs, slack <= 0.0, slack});
    }
    void add_meta(std::string key, std::string value) {
        metadata.emplace_back(std::move(key), std::move(value));
    }

    std::size_t fail_count() const {
        std::size_t f = 0;
        for (const auto& c : cases)
            if (!c.pass) ++f;
        return f;
    }
    std::size_t pass_count() const { return cases.size() - fail_count(); }

    double worst_slack() const {
        double w = -HUGE_VAL;
        for (const auto& c : cases) w = std::max(w, c.slack);
        return cases.empty() ? 0.0 : w;
    }

    std::string worst_case() const {
        const CaseResult* worst = nullptr;
        for (const auto& c : cases)
            if (!worst || c.slack > worst->slack) worst = &c;
        return worst ? worst->inputs : "";
    }

    bool passed() const { return fail_count() == 0; }

    /// JSON with fixed field order and capped per-case rows: the first
    /// `max_cases` cases plus every failing case.
    std::string to_json(std::size_t max_cases = 200) const {
        std::string out = "{\n  \"suite\": \"" + json_escape(suite) + "\",\n  \"metadata\": {";
        for (std::size_t i = 0; i < metadata.size(); ++i) {
            out += i ? ", " : "";
            out += "\"" + json_escape(metadata[i].first) + "\": \"" +
                   json_escape(metadata[i].second) + "\"";
        }
        out += "},\n  \"cases\": [\n";
        bool first = true;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            if (i >= max_cases && cases[i].pass) continue;
            const auto& c = cases[i];
            if (!first) out += ",\n";
            first = false;
            out += "    {\"inputs\": \"" + json_escape(c.inputs) + "\", \"lhs\": " +
                   format_double(c.lhs) + ", \"rhs\": " + format_double(c.rhs) +
                   ", \"pass\": " + (c.pass ? "true" : "false") +
                   ", \"slack\": " + format_double(c.slack) + "}";
        }
        out += "\n  ],\n  \"summary\": {\"cases\": " + std::to_string(cases.size()) +
               ", \"pass\": " + std::to_string(pass_count()) +
               ", \"fail\": " + std::to_string(fail_count()) +
               ", \"worst_slack\": " + format_double(worst_slack()) +
               ", \"worst_case\": \"" + json_escape(worst_case()) + "\"}\n}\n";
        return out;
    }

    std::string to_csv(std::size_t max_cases = 200) const {
        std::string out = "# suite=" + suite + "\n";
        for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
        out += "# cases=" + std::to_string(cases.size()) +
               " pass=" + std::to_string(pass_count()) +
               " fail=" + std::to_string(fail_count()) +
               " worst_slack=" + format_double(worst_slack()) + "\n";
        out += "inputs,lhs,rhs,pass,slack\n";
        for (std::size_t i = 0; i < cases.size(); ++i) {
            if (i >= max_cases && cases[i].pass) continue;
            const auto& c = cases[i];
            out += csv_field(c.inputs) + "," + format_double(c.lhs) + "," +
                   format_double(c.rhs) + "," + (c.pass ? "true" : "false") + "," +
                   format_double(c.slack) + "\n";
        }
        return out;
    }
};

}  // namespace khinch
