#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ybx/abgroup.hpp"
#include "ybx/common.hpp"

namespace ybx {

struct ProbeOptions {
    std::int64_t max_order = limits::kMaxProbeOrder;
    int threads = 0; // 0 = hardware concurrency
    int sample_limit = 10;
};

/**
 * Result of the exhaustive experiment for one (A, twist): every valid
 * coefficient family, classified by whether every separator subgroup is the
 * whole group ("sep full") versus brute-force simplicity of the pair
 * solution.
 *
 * A family that is simple without full separators violates the implemented
 * necessary condition and would signal a bug; a family with full separators
 * that is not simple is a genuine finding about the converse question and is
 * reported, never treated as a failure.
 */
struct ProbeReport {
    std::string group;
    std::string aut;
    int twist_order = 0;
    std::int64_t families_total = 0;
    std::int64_t iso_classes = 0;
    std::int64_t sep_full_simple = 0;
    std::int64_t sep_full_not_simple = 0;
    std::int64_t sep_partial_simple = 0;     // would violate the necessary condition
    std::int64_t sep_partial_not_simple = 0;
    std::vector<std::string> counterexamples; // sep full, not simple (samples)
    std::vector<std::string> violations;      // simple, sep partial (samples)
};

/**
 * Enumerates all valid coefficient families for (A, twist) and decides, per
 * family, the separator condition and brute-force simplicity of the pair
 * solution.
 *
 * The family space is reduced by the automorphisms of A commuting with the
 * twist (conjugating a family by such an automorphism is a solution
 * isomorphism, so both verdicts are class invariants); expensive verdicts
 * run once per class, counts are tallied per family. Simplicity never
 * consults the separator data: it is decided by a verified witness
 * congruence (retract or orbit partition) or by principal-congruence
 * closures from a fixed point, which cover all pairs by transitivity.
 */
ProbeReport probe_converse(const FinAbGroup& a, const GroupAut& twist,
                           const ProbeOptions& opts = {});

} // namespace ybx
