#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ybx/common.hpp"

namespace ybx {

/**
 * A finite involutive non-degenerate Yang-Baxter solution as a dense N x N
 * table: sigma[x][y] is the image of y under the left coordinate map of x,
 * and the right map gamma is derived from it.
 *
 * make() validates everything before handing out an instance: every sigma
 * row and every gamma row is a permutation, r^2 = id, and the braid relation
 * holds on all triples. Failures carry a witness.
 */
class Solution {
public:
    static Solution make(const std::vector<std::vector<int>>& sigma,
                         std::vector<std::string> labels = {});
    static Solution make_flat(int n, std::vector<int> sigma,
                              std::vector<std::string> labels = {});

    int size() const { return n_; }
    int sigma(int x, int y) const { return sigma_[static_cast<std::size_t>(x) * n_ + y]; }
    int sigma_inv(int x, int y) const {
        return sigma_inv_[static_cast<std::size_t>(x) * n_ + y];
    }
    int gamma(int y, int x) const { return gamma_[static_cast<std::size_t>(y) * n_ + x]; }
    std::pair<int, int> apply_r(int x, int y) const {
        return {sigma(x, y), gamma(y, x)};
    }
    std::span<const int> sigma_row(int x) const {
        return {sigma_.data() + static_cast<std::size_t>(x) * n_,
                static_cast<std::size_t>(n_)};
    }
    bool sigma_rows_equal(int x, int y) const;
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& sigma_flat() const { return sigma_; }

private:
    Solution() = default;
    int n_ = 0;
    std::vector<int> sigma_, sigma_inv_, gamma_;
    std::vector<std::string> labels_;
};

/// The finite-set criterion equivalent to the braid relation:
/// s_x . s_{s_x^{-1}(y)} = s_y . s_{s_y^{-1}(x)} for all x, y. Kept as an
/// independent oracle against the triple check in make().
bool verify_sigma_condition(const Solution& s);

struct OrbitInfo {
    std::vector<std::vector<int>> orbits; // each sorted; ordered by least point
    std::vector<int> orbit_of;
    bool transitive = false;
};

/// Orbits of the ground set under the group generated by the sigma rows.
OrbitInfo solution_orbits(const Solution& s);

bool is_indecomposable(const Solution& s);

struct RetractResult {
    Solution solution;
    std::vector<int> projection;
};

/// Quotient by the relation "equal sigma rows"; the induced table is
/// validated as a Solution.
RetractResult retract(const Solution& s);

bool is_irretractable(const Solution& s);

/// Least k with |Ret^k| = 1, or nullopt when the retract tower stabilizes
/// above one point.
std::optional<int> multipermutation_level(const Solution& s);

/**
 * A partition of the ground set compatible with the sigma action:
 * x ~ x' and y ~ y' force sigma_x(y) ~ sigma_{x'}(y').
 */
class Congruence {
public:
    static Congruence discrete(int n);

    int size() const { return static_cast<int>(block_of_.size()); }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_of(int x) const { return block_of_[x]; }
    bool same(int x, int y) const { return block_of_[x] == block_of_[y]; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    bool is_full() const { return block_count() == 1; }
    bool is_discrete() const { return block_count() == size(); }

    /// Canonical form from a union-find parent vector; blocks are ordered by
    /// least member.
    static Congruence from_parents(std::span<const int> parent);

private:
    std::vector<int> block_of_;
    std::vector<std::vector<int>> blocks_;
};

/// Smallest congruence of s containing the given pairs, by union-find
/// closure under the sigma compatibility rule.
Congruence congruence_generated(const Solution& s,
                                std::span<const std::pair<int, int>> pairs);

struct QuotientSolutionResult {
    Solution solution;
    std::vector<int> projection;
};

QuotientSolutionResult quotient_solution(const Solution& s, const Congruence& c);

struct SimplicityResult {
    bool simple = false;
    std::optional<Congruence> witness; // a proper non-discrete congruence
};

/// Decides simplicity through principal congruences: every pair of distinct
/// points must generate the full relation. Requires size > 1.
SimplicityResult is_simple_solution(const Solution& s);

/// Backtracking search for a bijection f with f(sigma_x(y)) =
/// sigma'_{f(x)}(f(y)); nullopt if none exists.
std::optional<std::vector<int>> find_solution_isomorphism(const Solution& s1,
                                                          const Solution& s2);

/**
 * Union-find closure engine behind congruence_generated, reusable across
 * calls so that hot sweeps do not reallocate. seed() merges a pair; close()
 * drives the compatibility rule to a fixpoint and returns the block count
 * (stopping early at one block when early_full_exit is set).
 */
class CongruenceCloser {
public:
    void reset(int n);
    void seed(int a, int b);
    int close(std::span<const int> sigma_flat, bool early_full_exit);
    std::span<const int> parents() const { return parent_; }
    int blocks() const { return blocks_; }

private:
    void unite(int a, int b);
    int find(int x);
    std::vector<int> parent_, rank_;
    std::vector<std::pair<int, int>> work_;
    int n_ = 0;
    int blocks_ = 0;
};

} // namespace ybx
