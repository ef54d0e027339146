#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ybx/common.hpp"

namespace ybx {

/**
 * A finite abelian group given as a product of cyclic factors Z/n1 x ... x Z/nk.
 *
 * Elements are addressed by their index in the lexicographic enumeration of
 * residue tuples; all higher layers pass these indices around. The empty
 * factor list is the trivial group (order 1) and only arises internally,
 * e.g. as a quotient; the descriptor grammar does not produce it.
 *
 * Immutable after construction and cheap to copy (shared representation).
 */
class FinAbGroup {
public:
    FinAbGroup(); // trivial group
    explicit FinAbGroup(std::vector<int> factors,
                        std::int64_t max_order = limits::kMaxGroupOrder);

    /// Parses the descriptor grammar `Zn(xZn)*`, e.g. "Z2xZ2". Factors must
    /// be >= 2.
    static FinAbGroup parse(std::string_view text,
                            std::int64_t max_order = limits::kMaxGroupOrder);

    int rank() const;
    int factor(int i) const;
    const std::vector<int>& factors() const;
    std::int64_t order() const;
    int exponent() const; // lcm of the factors; 1 for the trivial group

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const;
    int zero() const { return 0; }
    int scalar_mul(std::int64_t k, int a) const;

    std::vector<int> tuple_of(int idx) const;
    /// Index of a residue tuple; entries are reduced mod the factors, so
    /// negative residues are fine.
    int index_of(std::span<const std::int64_t> residues) const;

    std::string label(int idx) const;   // "3" for rank 1, "(1,0)" otherwise
    std::string descriptor() const;     // "Z2xZ2"; "Z1" for the trivial group

    bool operator==(const FinAbGroup& other) const;
    bool operator!=(const FinAbGroup& other) const { return !(*this == other); }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    friend class GroupAut;
};

/**
 * An automorphism of a FinAbGroup, stored as a k x k integer matrix whose
 * column j is the image of the j-th canonical generator in residue
 * coordinates, together with the induced permutation of element indices.
 *
 * Construction verifies well-definedness (factor(i) divides m[i][j] *
 * factor(j)) and bijectivity on the full element set.
 */
class GroupAut {
public:
    static GroupAut identity(const FinAbGroup& g);
    static GroupAut from_matrix(const FinAbGroup& g,
                                const std::vector<std::vector<std::int64_t>>& m);

    const FinAbGroup& group() const;
    int apply(int idx) const;
    const std::vector<int>& perm() const;
    /// Entries reduced mod factor(row), which makes the matrix canonical for
    /// the map it represents.
    const std::vector<std::vector<std::int64_t>>& matrix() const;

    GroupAut compose(const GroupAut& other) const; // x -> (*this)(other(x))
    GroupAut inverse() const;
    GroupAut pow(std::int64_t e) const;
    int order() const; // least s >= 1 with t^s = id
    bool is_identity() const;

    /// t - id as a candidate automorphism; empty when that map is not
    /// bijective.
    std::optional<GroupAut> minus_identity() const;

    bool operator==(const GroupAut& other) const;
    bool operator!=(const GroupAut& other) const { return !(*this == other); }

private:
    GroupAut(FinAbGroup g, std::vector<std::vector<std::int64_t>> m,
             std::vector<int> perm);
    FinAbGroup group_;
    std::vector<std::vector<std::int64_t>> matrix_;
    std::vector<int> perm_;
};

/// Every automorphism of g, in lexicographic matrix order. Intended for
/// small groups (sweeps and probes); throws CapError when the candidate
/// space is unreasonable.
std::vector<GroupAut> all_automorphisms(const FinAbGroup& g);

/**
 * A subgroup of a FinAbGroup, kept as a membership bit set plus the sorted
 * member list.
 */
class Subgroup {
public:
    static Subgroup generated(const FinAbGroup& g, std::span<const int> gens);
    static Subgroup trivial(const FinAbGroup& g);

    const FinAbGroup& group() const;
    std::int64_t size() const;
    bool contains(int idx) const;
    const std::vector<int>& members() const; // ascending
    const std::vector<int>& generators() const;
    bool is_whole_group() const;

    bool operator==(const Subgroup& other) const;
    bool operator!=(const Subgroup& other) const { return !(*this == other); }

private:
    Subgroup(FinAbGroup g, std::vector<std::uint8_t> member,
             std::vector<int> members, std::vector<int> gens);
    FinAbGroup group_;
    std::vector<std::uint8_t> member_;
    std::vector<int> members_;
    std::vector<int> gens_;
};

struct QuotientGroup {
    FinAbGroup group;            // canonical cyclic decomposition of G/S
    std::vector<int> projection; // element of G -> element of quotient
};

/// Quotient of g by a subgroup, with canonical coset labeling via the Smith
/// normal form of the relation lattice. The projection is verified to be a
/// surjective homomorphism with kernel s.
QuotientGroup quotient(const FinAbGroup& g, const Subgroup& s);

} // namespace ybx
