#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ybx/brace.hpp"
#include "ybx/common.hpp"
#include "ybx/probe.hpp"
#include "ybx/solution.hpp"

namespace ybx {

// Canonical artifact text: fixed key order, two-space indent, trailing
// newline, so identical inputs serialize byte-identically.
std::string solution_to_json(const Solution& s);
Solution solution_from_json(std::string_view text);
std::string brace_to_json(const FiniteBrace& b);
FiniteBrace brace_from_json(std::string_view text,
                            std::int64_t cap = limits::kMaxBraceSize);

/// "solution" or "brace"; ParseError for anything else.
std::string artifact_kind(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Line-oriented `key: value` report.
class Report {
public:
    void set(std::string key, std::string value);
    void set(std::string key, bool value);
    void set(std::string key, std::int64_t value);
    std::string text() const;
    const std::vector<std::pair<std::string, std::string>>& lines() const {
        return lines_;
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

/// Full predicate report for a validated solution: the validation verdicts
/// plus decomposability, retractability, level, simplicity and (optionally)
/// the permutation group order.
Report analyze_solution_report(const Solution& s, bool with_group = true,
                               std::int64_t perm_cap = limits::kMaxPermGroup);

Report brace_report(const FiniteBrace& b, bool enumerate_ideals_flag = false,
                    std::int64_t ideal_cap = 512);

Report probe_report_text(const ProbeReport& r);

} // namespace ybx
