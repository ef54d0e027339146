#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ybx/abgroup.hpp"
#include "ybx/brace.hpp"
#include "ybx/common.hpp"
#include "ybx/cycring.hpp"
#include "ybx/solution.hpp"

namespace ybx {

/**
 * The coefficient family (j_a) that, together with a twist automorphism t,
 * drives the pair construction on A x A: an assignment a -> j_a with
 * j_a = j_{-a} and j_{t^s(a)} - j_0 = t^s(j_a - j_0) for every a and s.
 * make() verifies both laws and reports the first witness on failure.
 */
struct JFamily {
    FinAbGroup group;
    GroupAut twist;
    std::vector<int> j; // j[a] as an element index

    static JFamily make(const FinAbGroup& a, const GroupAut& t, std::vector<int> j);
    std::string describe() const; // "0->0,1->1" style, in tuple syntax
};

/// All valid families for (A, t), enumerated from orbit representatives of
/// the group generated by t and negation. Intended for sweeps over small A.
std::vector<JFamily> enumerate_jfamilies(const FinAbGroup& a, const GroupAut& t);

/**
 * The pair solution on A x A: point (a1,a2) maps (c1,c2) to
 * (t(c1) + a2, t(c2 - j_{t(c1)+a2-a1})). Fully validated, and the closed
 * inverse formula is checked against the actual row inverses.
 */
Solution construct_newsol(const JFamily& jf);

/// Index of the pair (a1,a2) in the ground set of construct_newsol.
inline int newsol_point(const FinAbGroup& a, int a1, int a2) {
    return static_cast<int>(a1 * a.order() + a2);
}

struct NewsolAnalysis {
    // diff_span = the subgroup generated by all coefficient differences.
    Subgroup diff_span;
    // reach = second coordinates of the predicted orbit of (0,0).
    std::vector<int> reach; // sorted element indices
    bool orbit_matches = false;      // predicted orbit == BFS orbit of (0,0)
    bool indecomposable = false;     // from the BFS orbit
    bool irretractable_criterion = false; // every nonzero a shifts j somewhere
    bool irretractable = false;           // direct retract comparison
    // separator(a) = the stable difference subgroup attached to a nonzero a;
    // index 0 is unused.
    std::vector<Subgroup> separator;
    bool separators_full = false; // separator(a) = A for every nonzero a
    bool parity_ok = false;       // |A| odd or twist order odd
    bool simple_guaranteed = false; // separators_full && parity_ok
    bool simple = false;            // brute-force principal congruences
    std::optional<int> mpl;         // multipermutation level
    std::int64_t perm_group_order = -1; // only when compute_group
};

NewsolAnalysis analyze_newsol(const JFamily& jf, const Solution* prebuilt = nullptr,
                              bool compute_group = false,
                              std::int64_t perm_cap = limits::kMaxPermGroup);

/**
 * The function-space model of the pair solution, available when
 * twist - id is bijective: a brace product of the group of Z/n-valued
 * functions on A (n = exponent of A) with the brace A x <twist>, whose
 * lambda action reproduces the pair solution on a distinguished set of
 * points.
 */
struct AsymModel {
    JFamily family;
    int exponent = 0;          // n
    bool gcd_ok = false;       // gcd(order of twist, n) == 1
    FinAbGroup fun_group;      // Z/n-valued functions on A
    FiniteBrace affine;        // A x <twist> with the twisted multiplication
    FiniteBrace product;       // fun_group x affine, twisted by the form
    std::vector<std::vector<int>> action; // affine element -> permutation of functions
    std::vector<std::vector<int>> form;   // pairs of functions -> affine element
    std::vector<int> points;   // product element of the point (a,c), pair-indexed
    Solution restricted;       // the solution induced on the points
    Subgroup radical;          // functions annihilated by the form
};

AsymModel build_asym_model(const JFamily& jf, const Solution* prebuilt = nullptr,
                           std::int64_t group_cap = limits::kMaxGroupOrder,
                           std::int64_t brace_cap = limits::kMaxBraceSize);

/**
 * The permutation-group brace predicted by the model: functions modulo the
 * radical, in the same product construction. Requires the coprimality flag;
 * asserts the predicted order and an explicit isomorphism with the brace
 * reconstructed from the solution.
 */
FiniteBrace model_perm_brace(const AsymModel& model,
                             std::int64_t perm_cap = limits::kMaxPermGroup,
                             std::int64_t brace_cap = limits::kMaxBraceSize);

/**
 * The grid solution on Z/n x Z/m x Z/m driven by a unit t of order m mod n:
 * sigma_{(i,a,u)}(j,c,v) = (t^u j + t^a, c+u, v+1-[i = t^u j + t^a]).
 * Validated, and certified indecomposable and irretractable.
 */
Solution construct_grid(std::int64_t n, std::int64_t m, std::int64_t t);

inline int grid_point(std::int64_t n, std::int64_t m, std::int64_t i, std::int64_t a,
                      std::int64_t mu) {
    (void)n;
    return static_cast<int>((i * m + a) * m + mu);
}

/**
 * The simple-brace family: for a prime p and prime powers p_i^{m_i} with
 * p | p_i - 1, builds the brace (R x Z/n) x Z/p of order p^n * n over the
 * ring R = F_p[x]/(x^{n-1}+...+1), its distinguished orbit of n*p^2 points,
 * and the matching grid solution. Certifies simplicity of both the brace
 * and the solution, the trivial socle, and the explicit isomorphism between
 * the permutation-group brace of the solution and the constructed brace.
 */
struct SimpleFamily {
    std::int64_t p = 0, n = 0, t = 0;
    std::shared_ptr<CycRing> ring;
    FiniteBrace frame;   // R x Z/n
    FiniteBrace brace;   // (R x Z/n) x Z/p
    std::vector<int> points; // brace elements of the orbit
    Solution restricted;     // induced on the orbit
    Solution grid;           // construct_grid(n, p, t)
    std::vector<int> grid_iso; // grid point -> restricted point
};

SimpleFamily construct_simple_family(
    std::int64_t p, const std::vector<std::pair<std::int64_t, int>>& prime_powers,
    std::int64_t group_cap = limits::kMaxGroupOrder,
    std::int64_t brace_cap = limits::kMaxBraceSize,
    std::int64_t perm_cap = limits::kMaxPermGroup);

} // namespace ybx
