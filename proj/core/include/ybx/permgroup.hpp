#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ybx/common.hpp"
#include "ybx/solution.hpp"

namespace ybx {

/**
 * The permutation group generated by the sigma rows of a solution, closed by
 * breadth-first search. Element 0 is the identity; every other element e
 * records one factorization e = parent . sigma_point discovered during the
 * closure, which later drives the additive-structure reconstruction on the
 * group.
 */
class PermGroup {
public:
    struct Word {
        int parent = -1; // -1 only for the identity
        int point = -1;  // e = parent composed with the sigma row of `point`
    };

    std::int64_t size() const {
        return degree_ == 0 ? 0 : static_cast<std::int64_t>(elems_.size()) / degree_;
    }
    int degree() const { return degree_; }
    int identity() const { return 0; }
    std::span<const int> perm(int e) const {
        return {elems_.data() + static_cast<std::size_t>(e) * degree_,
                static_cast<std::size_t>(degree_)};
    }
    int apply(int e, int x) const {
        return elems_[static_cast<std::size_t>(e) * degree_ + x];
    }
    /// Element index of the sigma row of a point.
    int sigma_element(int point) const { return sigma_elem_[point]; }
    Word word(int e) const { return words_[e]; }
    /// Index of the element whose permutation is a . b (apply b first).
    int compose(int a, int b) const;
    int inverse(int e) const;
    /// Index lookup of an explicit permutation; -1 when absent.
    int find(std::span<const int> perm) const;
    std::string cycle_label(int e) const;

private:
    friend PermGroup permutation_group(const Solution&, std::int64_t);
    int degree_ = 0;
    std::vector<int> elems_; // flattened permutations
    std::vector<Word> words_;
    std::vector<int> sigma_elem_;
    // open-addressed index over elems_
    std::vector<int> table_;
    std::uint64_t hash_perm(std::span<const int> p) const;
    void index_insert(int e);
};

/// BFS closure of the sigma rows; throws CapError past `cap` elements.
PermGroup permutation_group(const Solution& s,
                            std::int64_t cap = limits::kMaxPermGroup);

} // namespace ybx
