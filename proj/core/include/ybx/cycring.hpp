#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ybx/abgroup.hpp"
#include "ybx/common.hpp"

namespace ybx {

/**
 * The quotient ring F_p[x] / (x^{n-1} + ... + x + 1) for a prime p and n >= 2
 * coprime to p. Elements are coefficient vectors of length n-1 over Z/p in
 * the basis (1, xi, ..., xi^{n-2}), indexed through the additive group
 * (Z/p)^{n-1}; xi denotes the residue class of x and has multiplicative
 * order n.
 *
 * Also carries the symmetric bilinear form with Gram entries
 * form(xi^j, xi^i) = 1 - delta_{j,i}, and the two distinguished additive
 * automorphisms: multiplication by xi and the substitution xi -> xi^t.
 * Construction verifies that the form is non-degenerate and that
 * (xi-times minus identity) is bijective.
 */
class CycRing {
public:
    CycRing(std::int64_t p, std::int64_t n,
            std::int64_t max_order = limits::kMaxGroupOrder);

    std::int64_t p() const;
    std::int64_t n() const;
    int dim() const;              // n - 1
    std::int64_t size() const;    // p^(n-1)
    const FinAbGroup& additive_group() const;

    int zero() const { return 0; }
    int one() const;
    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const;
    int mul(int a, int b) const;
    int xi_pow(std::int64_t e) const; // xi^e, reduced into the basis

    int xi_times(int q) const;                   // q -> xi * q
    int subst_pow(std::int64_t t, int q) const;  // q(xi) -> q(xi^t), t a unit mod n
    int form(int u, int v) const;                // value in [0, p)

    /// Rank of the Gram matrix equals the dimension. Decided at
    /// construction; equivalent to p not dividing n-2, so it can fail for
    /// standalone parameter choices (n = 2 always has the zero form) and is
    /// enforced by the constructions that rely on it.
    bool form_nondegenerate() const;

    GroupAut xi_times_aut() const;
    GroupAut subst_pow_aut(std::int64_t t) const;

    /// Exhaustive verification that subst_pow(t,.) and xi_times preserve the
    /// form, and that subst_pow(t) . xi_times = xi_times^t . subst_pow(t).
    void verify_twist_properties(std::int64_t t) const;

    std::vector<int> coeffs(int idx) const; // constant term first
    int from_coeffs(std::span<const std::int64_t> c) const;
    std::string label(int idx) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

} // namespace ybx
