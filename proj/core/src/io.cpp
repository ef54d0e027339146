#include "ybx/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ybx/permgroup.hpp"

namespace ybx {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed JSON artifact");
    return j;
}

std::vector<std::vector<int>> table_from_json(const ordered_json& j,
                                              const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw ParseError(std::string("artifact is missing the '") + field +
                         "' table");
    std::vector<std::vector<int>> t;
    for (const auto& row : j[field]) {
        if (!row.is_array())
            throw ParseError(std::string("'") + field + "' rows must be arrays");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw ParseError(std::string("'") + field +
                                 "' entries must be integers");
            r.push_back(v.get<int>());
        }
        t.push_back(std::move(r));
    }
    return t;
}

std::vector<std::string> labels_from_json(const ordered_json& j, std::size_t n) {
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            throw ParseError("'labels' must be an array");
        for (const auto& v : j["labels"])
            labels.push_back(v.get<std::string>());
        if (labels.size() != n)
            throw ParseError("label count does not match the size");
    }
    return labels;
}

} // namespace

std::string artifact_kind(std::string_view text) {
    ordered_json j = parse_json(text);
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError("artifact has no 'kind' field");
    std::string kind = j["kind"].get<std::string>();
    if (kind != "solution" && kind != "brace")
        throw ParseError("unknown artifact kind '" + kind + "'");
    return kind;
}

std::string solution_to_json(const Solution& s) {
    ordered_json j;
    j["kind"] = "solution";
    j["size"] = s.size();
    j["labels"] = s.labels();
    ordered_json sigma = ordered_json::array();
    for (int x = 0; x < s.size(); ++x) {
        ordered_json row = ordered_json::array();
        for (int y = 0; y < s.size(); ++y)
            row.push_back(s.sigma(x, y));
        sigma.push_back(std::move(row));
    }
    j["sigma"] = std::move(sigma);
    return j.dump(2) + "\n";
}

Solution solution_from_json(std::string_view text) {
    ordered_json j = parse_json(text);
    if (!j.contains("kind") || j["kind"] != "solution")
        throw ParseError("artifact is not a solution");
    if (!j.contains("size") || !j["size"].is_number_integer())
        throw ParseError("solution artifact has no integer 'size'");
    auto sigma = table_from_json(j, "sigma");
    if (static_cast<std::int64_t>(sigma.size()) != j["size"].get<std::int64_t>())
        throw ParseError("declared size does not match the sigma table");
    auto labels = labels_from_json(j, sigma.size());
    return Solution::make(sigma, std::move(labels));
}

std::string brace_to_json(const FiniteBrace& b) {
    ordered_json j;
    j["kind"] = "brace";
    j["size"] = b.size();
    ordered_json add = ordered_json::array(), mul = ordered_json::array();
    for (int x = 0; x < b.size(); ++x) {
        ordered_json ra = ordered_json::array(), rm = ordered_json::array();
        for (int y = 0; y < b.size(); ++y) {
            ra.push_back(b.add(x, y));
            rm.push_back(b.mul(x, y));
        }
        add.push_back(std::move(ra));
        mul.push_back(std::move(rm));
    }
    j["add"] = std::move(add);
    j["mul"] = std::move(mul);
    j["labels"] = b.labels();
    return j.dump(2) + "\n";
}

FiniteBrace brace_from_json(std::string_view text, std::int64_t cap) {
    ordered_json j = parse_json(text);
    if (!j.contains("kind") || j["kind"] != "brace")
        throw ParseError("artifact is not a brace");
    if (!j.contains("size") || !j["size"].is_number_integer())
        throw ParseError("brace artifact has no integer 'size'");
    auto add = table_from_json(j, "add");
    auto mul = table_from_json(j, "mul");
    if (static_cast<std::int64_t>(add.size()) != j["size"].get<std::int64_t>())
        throw ParseError("declared size does not match the tables");
    auto labels = labels_from_json(j, add.size());
    return FiniteBrace::make(add, mul, std::move(labels), cap);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw Error("short write to '" + path + "'");
}

// -------------------------------------------------------------------- reports

void Report::set(std::string key, std::string value) {
    lines_.emplace_back(std::move(key), std::move(value));
}
void Report::set(std::string key, bool value) {
    lines_.emplace_back(std::move(key), value ? "true" : "false");
}
void Report::set(std::string key, std::int64_t value) {
    lines_.emplace_back(std::move(key), std::to_string(value));
}

std::string Report::text() const {
    std::ostringstream os;
    for (const auto& [k, v] : lines_)
        os << k << ": " << v << "\n";
    return os.str();
}

Report analyze_solution_report(const Solution& s, bool with_group,
                               std::int64_t perm_cap) {
    Report r;
    r.set("kind", std::string("solution"));
    r.set("size", static_cast<std::int64_t>(s.size()));
    // A constructed Solution has already passed validation; re-state the
    // verdicts and add the independent criterion as a cross-check.
    r.set("involutive", true);
    r.set("nondegenerate", true);
    r.set("braid", true);
    r.set("sigma_condition", verify_sigma_condition(s));
    r.set("indecomposable", is_indecomposable(s));
    r.set("irretractable", is_irretractable(s));
    auto mpl = multipermutation_level(s);
    r.set("mpl", mpl ? std::to_string(*mpl) : std::string("not-multipermutation"));
    if (s.size() > 1)
        r.set("simple", is_simple_solution(s).simple);
    else
        r.set("simple", std::string("n/a"));
    if (with_group)
        r.set("perm_group_order", permutation_group(s, perm_cap).size());
    return r;
}

Report brace_report(const FiniteBrace& b, bool enumerate_ideals_flag,
                    std::int64_t ideal_cap) {
    Report r;
    r.set("kind", std::string("brace"));
    r.set("size", static_cast<std::int64_t>(b.size()));
    r.set("brace_ok", true); // construction validates
    r.set("trivial", b.is_trivial());
    r.set("socle_size", static_cast<std::int64_t>(socle(b).members.size()));
    if (b.size() > 1)
        r.set("simple", is_simple_brace(b));
    else
        r.set("simple", std::string("n/a"));
    if (enumerate_ideals_flag || b.size() <= ideal_cap)
        r.set("ideal_count",
              static_cast<std::int64_t>(enumerate_ideals(b, ideal_cap).size()));
    return r;
}

Report probe_report_text(const ProbeReport& p) {
    Report r;
    r.set("kind", std::string("probe"));
    r.set("group", p.group);
    r.set("aut", p.aut);
    r.set("twist_order", static_cast<std::int64_t>(p.twist_order));
    r.set("families", p.families_total);
    r.set("iso_classes", p.iso_classes);
    r.set("sep_full_simple", p.sep_full_simple);
    r.set("sep_full_not_simple", p.sep_full_not_simple);
    r.set("sep_partial_simple", p.sep_partial_simple);
    r.set("sep_partial_not_simple", p.sep_partial_not_simple);
    r.set("necessary_violations", p.sep_partial_simple);
    r.set("converse_counterexamples", p.sep_full_not_simple);
    for (const auto& c : p.counterexamples)
        r.set("counterexample", c);
    for (const auto& v : p.violations)
        r.set("violation", v);
    return r;
}

} // namespace ybx
