// ybx: construct, verify and analyze finite Yang-Baxter solutions and left
// braces from the command line. Artifacts are canonical JSON; reports are
// line-oriented `key: value` text on stdout.
//
// Exit codes: 0 success, 1 failed predicate/assertion (with a witness on
// stderr), 2 parse error, 3 cap exceeded.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "ybx/abgroup.hpp"
#include "ybx/brace.hpp"
#include "ybx/constructions.hpp"
#include "ybx/io.hpp"
#include "ybx/probe.hpp"
#include "ybx/solution.hpp"

namespace {

struct Caps {
    std::int64_t group = ybx::limits::kMaxGroupOrder;
    std::int64_t brace = ybx::limits::kMaxBraceSize;
    std::int64_t perm = ybx::limits::kMaxPermGroup;
};

std::vector<std::vector<std::int64_t>> parse_aut_matrix(const std::string& text,
                                                        int rank) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw ybx::ParseError("automorphism matrix must be a JSON array, got '" +
                              text + "'");
    std::vector<std::vector<std::int64_t>> m;
    if (!j.empty() && j[0].is_array()) {
        for (const auto& row : j) {
            if (!row.is_array())
                throw ybx::ParseError("matrix rows must be arrays");
            std::vector<std::int64_t> r;
            for (const auto& v : row)
                r.push_back(v.get<std::int64_t>());
            m.push_back(std::move(r));
        }
    } else {
        // flat row-major list
        std::vector<std::int64_t> flat;
        for (const auto& v : j)
            flat.push_back(v.get<std::int64_t>());
        if (static_cast<int>(flat.size()) != rank * rank)
            throw ybx::ParseError("flat matrix needs rank^2 entries");
        for (int i = 0; i < rank; ++i)
            m.emplace_back(flat.begin() + static_cast<std::size_t>(i) * rank,
                           flat.begin() + static_cast<std::size_t>(i + 1) * rank);
    }
    return m;
}

// One element in "(1,0)" tuple syntax, or a bare residue for rank-1 groups.
int parse_element(const ybx::FinAbGroup& g, const std::string& text) {
    std::string t = text;
    while (!t.empty() && t.front() == ' ')
        t.erase(t.begin());
    while (!t.empty() && t.back() == ' ')
        t.pop_back();
    if (t.empty())
        throw ybx::ParseError("empty element");
    std::vector<std::int64_t> residues;
    if (t.front() == '(') {
        if (t.back() != ')')
            throw ybx::ParseError("unbalanced tuple '" + text + "'");
        std::string inner = t.substr(1, t.size() - 2);
        std::string cur;
        for (char ch : inner) {
            if (ch == ',') {
                residues.push_back(std::stoll(cur));
                cur.clear();
            } else
                cur += ch;
        }
        if (!cur.empty())
            residues.push_back(std::stoll(cur));
    } else {
        if (g.rank() != 1)
            throw ybx::ParseError("element '" + text + "' needs tuple syntax for " +
                                  g.descriptor());
        residues.push_back(std::stoll(t));
    }
    if (static_cast<int>(residues.size()) != g.rank())
        throw ybx::ParseError("element '" + text + "' has wrong arity for " +
                              g.descriptor());
    return g.index_of(residues);
}

// "0->0,1->1" or "(0,0)->(1,0),(0,1)->(0,0),..." (commas inside tuples bind
// to the tuple).
std::vector<int> parse_j_map(const ybx::FinAbGroup& g, const std::string& text) {
    std::vector<std::string> entries;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (ch == ',' && depth == 0) {
            entries.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    if (!cur.empty())
        entries.push_back(cur);
    std::vector<int> j(g.order(), -1);
    for (const auto& e : entries) {
        auto arrow = e.find("->");
        if (arrow == std::string::npos)
            throw ybx::ParseError("coefficient entry '" + e + "' has no '->'");
        int key = parse_element(g, e.substr(0, arrow));
        int val = parse_element(g, e.substr(arrow + 2));
        if (j[key] != -1)
            throw ybx::ParseError("coefficient for " + g.label(key) +
                                  " given twice");
        j[key] = val;
    }
    for (std::int64_t x = 0; x < g.order(); ++x)
        if (j[x] == -1)
            throw ybx::ParseError("coefficient for " + g.label(static_cast<int>(x)) +
                                  " is missing");
    return j;
}

std::vector<std::pair<std::int64_t, int>> parse_primes(const std::string& text) {
    std::vector<std::pair<std::int64_t, int>> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty())
            return;
        auto caret = cur.find('^');
        if (caret == std::string::npos)
            out.emplace_back(std::stoll(cur), 1);
        else
            out.emplace_back(std::stoll(cur.substr(0, caret)),
                             static_cast<int>(std::stoll(cur.substr(caret + 1))));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else if (ch != ' ')
            cur += ch;
    }
    flush();
    if (out.empty())
        throw ybx::ParseError("empty prime list");
    return out;
}

ybx::JFamily family_from_flags(const std::string& group_txt,
                               const std::string& aut_txt,
                               const std::string& j_txt, const Caps& caps) {
    ybx::FinAbGroup g = ybx::FinAbGroup::parse(group_txt, caps.group);
    ybx::GroupAut t = aut_txt.empty()
                          ? ybx::GroupAut::identity(g)
                          : ybx::GroupAut::from_matrix(
                                g, parse_aut_matrix(aut_txt, g.rank()));
    return ybx::JFamily::make(g, t, parse_j_map(g, j_txt));
}

void emit(const ybx::Report& r) { std::cout << r.text(); }

void report_newsol_analysis(const ybx::JFamily& jf, const ybx::Solution& s,
                            const Caps& caps) {
    ybx::NewsolAnalysis an =
        ybx::analyze_newsol(jf, &s, /*compute_group=*/true, caps.perm);
    ybx::Report r;
    r.set("diff_span_size", an.diff_span.size());
    r.set("reach_size", static_cast<std::int64_t>(an.reach.size()));
    r.set("orbit_matches_prediction", an.orbit_matches);
    r.set("indecomposable", an.indecomposable);
    r.set("irretractable_criterion", an.irretractable_criterion);
    r.set("irretractable", an.irretractable);
    r.set("separators_full", an.separators_full);
    r.set("parity_ok", an.parity_ok);
    r.set("simple_guaranteed", an.simple_guaranteed);
    r.set("simple", an.simple);
    r.set("mpl", an.mpl ? std::to_string(*an.mpl)
                        : std::string("not-multipermutation"));
    r.set("perm_group_order", an.perm_group_order);
    emit(r);
}

int run(int argc, char** argv) {
    CLI::App app{"finite Yang-Baxter solution and left brace workbench"};
    app.require_subcommand(1);
    Caps caps;
    app.add_option("--max-group-order", caps.group, "group order cap");
    app.add_option("--max-brace", caps.brace, "brace size cap");
    app.add_option("--max-permgroup", caps.perm, "permutation group cap");

    // construct
    auto* construct = app.add_subcommand("construct", "build an artifact");
    construct->require_subcommand(1);

    auto* newsol = construct->add_subcommand("newsol", "pair solution on A x A");
    std::string ns_group, ns_aut, ns_j, ns_out;
    bool ns_report = false;
    newsol->add_option("--group", ns_group, "group descriptor, e.g. Z2xZ2")
        ->required();
    newsol->add_option("--aut", ns_aut, "twist matrix, e.g. [[0,1],[1,1]]");
    newsol->add_option("--j", ns_j, "coefficients, e.g. \"0->0,1->1\"")->required();
    newsol->add_option("-o,--out", ns_out, "solution artifact path");
    newsol->add_flag("--report", ns_report, "print the full analysis");

    auto* grid = construct->add_subcommand("grid", "solution on Z/n x Z/m x Z/m");
    std::int64_t g_n = 0, g_m = 0, g_t = 0;
    std::string g_out;
    grid->add_option("--n", g_n)->required();
    grid->add_option("--m", g_m)->required();
    grid->add_option("--t", g_t, "unit of order m mod n")->required();
    grid->add_option("-o,--out", g_out, "solution artifact path");

    auto* sf = construct->add_subcommand("simple-family",
                                         "simple brace with its orbit solution");
    std::int64_t sf_p = 0;
    std::string sf_primes, sf_out, sf_brace_out;
    sf->add_option("--p", sf_p, "prime p")->required();
    sf->add_option("--primes", sf_primes, "prime powers, e.g. 3^1,5^2")->required();
    sf->add_option("-o,--out", sf_out, "solution artifact path");
    sf->add_option("--brace", sf_brace_out, "brace artifact path");

    // verify
    auto* verify = app.add_subcommand("verify", "re-validate an artifact file");
    std::string v_file;
    verify->add_option("file", v_file)->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full predicate report");
    std::string an_file, an_group, an_aut, an_j;
    bool an_nogroup = false;
    analyze->add_option("file", an_file, "solution artifact");
    analyze->add_option("--group", an_group);
    analyze->add_option("--aut", an_aut);
    analyze->add_option("--j", an_j);
    analyze->add_flag("--no-group", an_nogroup, "skip the permutation group");

    // brace
    auto* brace = app.add_subcommand("brace", "brace reports and derivation");
    std::string b_file, b_from, b_out;
    bool b_ideals = false;
    brace->add_option("file", b_file, "brace artifact");
    brace->add_option("--from-solution", b_from, "derive from a solution artifact");
    brace->add_option("-o,--out", b_out, "brace artifact path");
    brace->add_flag("--ideals", b_ideals, "enumerate all ideals");

    // iso
    auto* iso = app.add_subcommand("iso", "isomorphism tests");
    std::string i_brace, i_brace2, i_from, i_from2, i_sol, i_sol2;
    iso->add_option("--brace", i_brace);
    iso->add_option("--brace2", i_brace2);
    iso->add_option("--from-solution", i_from);
    iso->add_option("--from-solution2", i_from2);
    iso->add_option("--solution", i_sol);
    iso->add_option("--solution2", i_sol2);

    // probe
    auto* probe = app.add_subcommand("probe", "exhaustive family experiment");
    std::string p_group, p_aut;
    int p_threads = 0;
    std::int64_t p_cap = ybx::limits::kMaxProbeOrder;
    probe->add_option("--group", p_group)->required();
    probe->add_option("--aut", p_aut);
    probe->add_option("--threads", p_threads);
    probe->add_option("--max-order", p_cap, "probe order cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help exits cleanly, bad flags are parse errors
    }

    if (newsol->parsed()) {
        ybx::JFamily jf = family_from_flags(ns_group, ns_aut, ns_j, caps);
        ybx::Solution s = ybx::construct_newsol(jf);
        std::cout << "constructed: solution of size " << s.size() << "\n";
        if (!ns_out.empty()) {
            ybx::write_file(ns_out, ybx::solution_to_json(s));
            std::cout << "wrote: " << ns_out << "\n";
        }
        if (ns_report)
            report_newsol_analysis(jf, s, caps);
        return 0;
    }
    if (grid->parsed()) {
        ybx::Solution s = ybx::construct_grid(g_n, g_m, g_t);
        std::cout << "constructed: solution of size " << s.size() << "\n";
        if (!g_out.empty()) {
            ybx::write_file(g_out, ybx::solution_to_json(s));
            std::cout << "wrote: " << g_out << "\n";
        }
        return 0;
    }
    if (sf->parsed()) {
        ybx::SimpleFamily fam = ybx::construct_simple_family(
            sf_p, parse_primes(sf_primes), caps.group, caps.brace, caps.perm);
        ybx::Report r;
        r.set("n", fam.n);
        r.set("t", fam.t);
        r.set("brace_size", static_cast<std::int64_t>(fam.brace.size()));
        r.set("solution_size", static_cast<std::int64_t>(fam.grid.size()));
        r.set("brace_simple", true);
        r.set("solution_simple", true);
        r.set("perm_brace_isomorphic", true);
        emit(r);
        if (!sf_out.empty()) {
            ybx::write_file(sf_out, ybx::solution_to_json(fam.grid));
            std::cout << "wrote: " << sf_out << "\n";
        }
        if (!sf_brace_out.empty()) {
            ybx::write_file(sf_brace_out, ybx::brace_to_json(fam.brace));
            std::cout << "wrote: " << sf_brace_out << "\n";
        }
        return 0;
    }
    if (verify->parsed()) {
        std::string text = ybx::read_file(v_file);
        if (ybx::artifact_kind(text) == "solution") {
            ybx::Solution s = ybx::solution_from_json(text);
            emit(ybx::analyze_solution_report(s, true, caps.perm));
        } else {
            ybx::FiniteBrace b = ybx::brace_from_json(text, caps.brace);
            emit(ybx::brace_report(b));
        }
        return 0;
    }
    if (analyze->parsed()) {
        if (!an_file.empty()) {
            ybx::Solution s = ybx::solution_from_json(ybx::read_file(an_file));
            emit(ybx::analyze_solution_report(s, !an_nogroup, caps.perm));
            return 0;
        }
        if (an_group.empty() || an_j.empty())
            throw ybx::ParseError(
                "analyze needs a file or --group/--j construction flags");
        ybx::JFamily jf = family_from_flags(an_group, an_aut, an_j, caps);
        ybx::Solution s = ybx::construct_newsol(jf);
        emit(ybx::analyze_solution_report(s, !an_nogroup, caps.perm));
        report_newsol_analysis(jf, s, caps);
        return 0;
    }
    if (brace->parsed()) {
        if (!b_from.empty()) {
            ybx::Solution s = ybx::solution_from_json(ybx::read_file(b_from));
            ybx::SolutionBrace sb = ybx::brace_from_solution(s, caps.perm, caps.brace);
            emit(ybx::brace_report(sb.brace, b_ideals));
            if (!b_out.empty()) {
                ybx::write_file(b_out, ybx::brace_to_json(sb.brace));
                std::cout << "wrote: " << b_out << "\n";
            }
            return 0;
        }
        if (b_file.empty())
            throw ybx::ParseError("brace needs a file or --from-solution");
        ybx::FiniteBrace b = ybx::brace_from_json(ybx::read_file(b_file), caps.brace);
        emit(ybx::brace_report(b, b_ideals));
        return 0;
    }
    if (iso->parsed()) {
        if (!i_sol.empty() || !i_sol2.empty()) {
            if (i_sol.empty() || i_sol2.empty() || !i_brace.empty() ||
                !i_brace2.empty() || !i_from.empty() || !i_from2.empty())
                throw ybx::ParseError("solution iso takes exactly --solution and "
                                      "--solution2");
            ybx::Solution s1 = ybx::solution_from_json(ybx::read_file(i_sol));
            ybx::Solution s2 = ybx::solution_from_json(ybx::read_file(i_sol2));
            auto f = ybx::find_solution_isomorphism(s1, s2);
            ybx::Report r;
            r.set("isomorphic", f.has_value());
            emit(r);
            return 0;
        }
        // Brace sides, in flag order: files loaded as braces, solutions
        // passed through brace_from_solution.
        std::vector<ybx::FiniteBrace> sides;
        for (const auto& path : {i_brace, i_brace2})
            if (!path.empty())
                sides.push_back(
                    ybx::brace_from_json(ybx::read_file(path), caps.brace));
        for (const auto& path : {i_from, i_from2})
            if (!path.empty()) {
                ybx::Solution s = ybx::solution_from_json(ybx::read_file(path));
                sides.push_back(
                    ybx::brace_from_solution(s, caps.perm, caps.brace).brace);
            }
        if (sides.size() != 2)
            throw ybx::ParseError("iso needs exactly two sides (--brace/--brace2/"
                                  "--from-solution/--from-solution2)");
        auto f = ybx::find_brace_isomorphism(sides[0], sides[1]);
        ybx::Report r;
        r.set("isomorphic", f.has_value());
        emit(r);
        return 0;
    }
    if (probe->parsed()) {
        ybx::FinAbGroup g = ybx::FinAbGroup::parse(p_group, caps.group);
        ybx::GroupAut t = p_aut.empty()
                              ? ybx::GroupAut::identity(g)
                              : ybx::GroupAut::from_matrix(
                                    g, parse_aut_matrix(p_aut, g.rank()));
        ybx::ProbeOptions opts;
        opts.max_order = p_cap;
        opts.threads = p_threads;
        emit(ybx::probe_report_text(ybx::probe_converse(g, t, opts)));
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ybx::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ybx::CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ybx::CheckError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
