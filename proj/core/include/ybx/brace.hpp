#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ybx/abgroup.hpp"
#include "ybx/common.hpp"
#include "ybx/permgroup.hpp"
#include "ybx/solution.hpp"

namespace ybx {

/**
 * A finite left brace as explicit addition and multiplication tables over
 * indices 0..M-1, with the lambda table lambda_a(b) = -a + a*b derived at
 * construction.
 *
 * make() verifies all axioms exhaustively: (B,+) abelian group, (B,*) group,
 * the distributive-style law a*(b+c)+a = a*b+a*c on every triple, coinciding
 * neutral elements, every lambda_a an additive automorphism, and
 * lambda_{a*b} = lambda_a . lambda_b. Failures carry a witness.
 */
class FiniteBrace {
public:
    static FiniteBrace make(const std::vector<std::vector<int>>& add,
                            const std::vector<std::vector<int>>& mul,
                            std::vector<std::string> labels = {},
                            std::int64_t cap = limits::kMaxBraceSize);

    int size() const { return m_; }
    int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * m_ + b]; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * m_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const { return inv_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int zero() const { return zero_; }
    int lambda(int a, int b) const {
        return lambda_[static_cast<std::size_t>(a) * m_ + b];
    }
    int lambda_inv(int a, int b) const {
        return lambda_inv_[static_cast<std::size_t>(a) * m_ + b];
    }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& add_flat() const { return add_; }
    const std::vector<int>& mul_flat() const { return mul_; }

    bool is_trivial() const; // a*b == a+b everywhere

private:
    FiniteBrace() = default;
    int m_ = 0;
    int zero_ = 0;
    std::vector<int> add_, mul_, lambda_, lambda_inv_, neg_, inv_;
    std::vector<std::string> labels_;
};

struct BraceSubset {
    std::vector<std::uint8_t> member;
    std::vector<int> members; // ascending
    bool left_ideal = false;
    bool ideal = false;
};

/// Classification of an arbitrary member set (no closure performed).
BraceSubset classify_subset(const FiniteBrace& b, std::span<const int> members);

/// { a : a*x = a+x for all x }, certified to be an ideal.
BraceSubset socle(const FiniteBrace& b);

/// Smallest ideal containing a: joint fixpoint of additive closure, lambda
/// images and multiplicative conjugation.
BraceSubset ideal_generated(const FiniteBrace& b, int a);

/// True iff every nonzero principal ideal is the whole brace. Requires
/// size > 1.
bool is_simple_brace(const FiniteBrace& b);

/// All ideals, as sorted member lists (joins of principal ideals). Intended
/// for small braces; throws CapError past `max_size`.
std::vector<std::vector<int>> enumerate_ideals(const FiniteBrace& b,
                                               std::int64_t max_size = 512);

FiniteBrace trivial_brace(const FinAbGroup& g,
                          std::int64_t cap = limits::kMaxBraceSize);

/// Semidirect product of the trivial braces on a and t: componentwise
/// addition, multiplication (a,s)(a',s') = (a + action[s](a'), s+s').
/// The action must be a homomorphism from t into Aut(a).
FiniteBrace semidirect_trivial(const FinAbGroup& a, const FinAbGroup& t,
                               const std::vector<GroupAut>& action,
                               std::int64_t cap = limits::kMaxBraceSize);

/**
 * Asymmetric product of a left brace (left component) by a brace acting on
 * it (right component), twisted by a symmetric biadditive form with values
 * in the right component:
 *
 *   (f,a) + (h,c) = (f + h, a + c + form[f][h])
 *   (f,a) * (h,c) = (f * action[a](h), a * c)
 *
 * Element (f,a) has index f * |right| + a. The constructor verifies that
 * each action[a] is a brace automorphism of the left component, that the
 * action and the form satisfy the compatibility law
 * lambda_a(form(f,h)) = form(action[a](f), action[a](h)), and finally runs
 * the full brace axiom check on the assembled tables.
 */
FiniteBrace asymmetric_product(const FiniteBrace& left, const FiniteBrace& right,
                               const std::vector<std::vector<int>>& action,
                               const std::vector<std::vector<int>>& form,
                               std::int64_t cap = limits::kMaxBraceSize);

struct SolutionBrace {
    FiniteBrace brace;   // element i corresponds to group element i
    PermGroup group;
    std::vector<int> sigma_element; // point x -> brace element of its sigma row
};

/**
 * The brace structure on the permutation group of a solution.
 * Multiplication is permutation composition; addition is reconstructed along
 * the BFS factorizations (g + sigma_z = g . sigma_{g^{-1}(z)}, extended
 * word by word) and then certified by the full axiom check plus the
 * compatibility lambda_{sigma_x}(sigma_y) = sigma_{sigma_x(y)}.
 */
SolutionBrace brace_from_solution(const Solution& s,
                                  std::int64_t perm_cap = limits::kMaxPermGroup,
                                  std::int64_t brace_cap = limits::kMaxBraceSize);

struct QuotientBrace {
    FiniteBrace brace;
    std::vector<int> projection;
};

/// Quotient by a verified ideal; the projection is checked to preserve both
/// operations.
QuotientBrace quotient_brace(const FiniteBrace& b, const BraceSubset& ideal);

/// Backtracking search (with order-profile pruning) for a bijection
/// preserving both tables; nullopt when none exists.
std::optional<std::vector<int>> find_brace_isomorphism(const FiniteBrace& b1,
                                                       const FiniteBrace& b2);

/// The solution induced on a lambda-closed subset of a brace:
/// sigma_x(y) = lambda_x(y) restricted to the subset. Throws if the subset
/// is not closed under the lambda action of its own elements.
Solution restricted_solution(const FiniteBrace& b, std::span<const int> points);

} // namespace ybx
