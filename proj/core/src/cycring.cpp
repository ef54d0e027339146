#include "ybx/cycring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ybx {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

} // namespace

struct CycRing::Impl {
    std::int64_t p = 0;
    std::int64_t n = 0;
    int dim = 0;
    FinAbGroup addgrp;
    std::vector<std::vector<int>> xi_power; // xi^e as coefficients, e in [0, 2n)
    std::vector<int> gram;                  // dim x dim, row-major
    std::vector<int> mul_table;             // full table when size is small
    bool nondegenerate = false;
};

CycRing::CycRing(std::int64_t p, std::int64_t n, std::int64_t max_order) {
    if (!is_prime(p))
        throw CheckError("ring characteristic " + std::to_string(p) + " is not prime");
    if (n < 2)
        throw CheckError("ring parameter n must be >= 2");
    if (std::gcd(p, n) != 1)
        throw CheckError("ring requires gcd(p,n)=1, got p=" + std::to_string(p) +
                         ", n=" + std::to_string(n));
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->n = n;
    impl->dim = static_cast<int>(n - 1);
    impl->addgrp = FinAbGroup(std::vector<int>(impl->dim, static_cast<int>(p)), max_order);

    // xi^e in the basis: degrees below n-1 are basis vectors; xi^{n-1} is
    // -(1 + xi + ... + xi^{n-2}); higher powers reduce through xi^n = 1.
    impl->xi_power.assign(2 * n, std::vector<int>(impl->dim, 0));
    for (int e = 0; e < impl->dim; ++e)
        impl->xi_power[e][e] = 1;
    for (int i = 0; i < impl->dim; ++i)
        impl->xi_power[impl->dim][i] = static_cast<int>(p - 1);
    for (std::int64_t e = n; e < 2 * n; ++e)
        impl->xi_power[e] = impl->xi_power[e % n];

    impl->gram.assign(impl->dim * impl->dim, 0);
    for (int i = 0; i < impl->dim; ++i)
        for (int j = 0; j < impl->dim; ++j)
            impl->gram[i * impl->dim + j] = (i == j) ? 0 : 1;

    // Non-degeneracy of the form: full Gram rank over F_p. Stored, not
    // enforced; the simple-brace construction requires it and checks.
    {
        int d = impl->dim;
        std::vector<std::int64_t> m(impl->gram.begin(), impl->gram.end());
        int rank = 0;
        for (int col = 0; col < d && rank < d; ++col) {
            int piv = -1;
            for (int r = rank; r < d; ++r)
                if (m[r * d + col] % p != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0)
                continue;
            for (int j = 0; j < d; ++j)
                std::swap(m[rank * d + j], m[piv * d + j]);
            std::int64_t inv = 1, base = mod_reduce(m[rank * d + col], p);
            for (std::int64_t k = 1; k < p; ++k)
                if (base * k % p == 1) {
                    inv = k;
                    break;
                }
            for (int j = 0; j < d; ++j)
                m[rank * d + j] = mod_reduce(m[rank * d + j] * inv, p);
            for (int r = 0; r < d; ++r)
                if (r != rank && m[r * d + col] % p != 0) {
                    std::int64_t f = mod_reduce(m[r * d + col], p);
                    for (int j = 0; j < d; ++j)
                        m[r * d + j] =
                            mod_reduce(m[r * d + j] - f * m[rank * d + j], p);
                }
            ++rank;
        }
        impl->nondegenerate = rank == d;
    }

    // Dense multiplication table (element count is capped anyway).
    {
        std::int64_t sz = impl->addgrp.order();
        impl->mul_table.assign(sz * sz, 0);
        for (std::int64_t a = 0; a < sz; ++a) {
            auto ca = impl->addgrp.tuple_of(static_cast<int>(a));
            for (std::int64_t b = 0; b < sz; ++b) {
                auto cb = impl->addgrp.tuple_of(static_cast<int>(b));
                std::vector<std::int64_t> acc(impl->dim, 0);
                for (int i = 0; i < impl->dim; ++i) {
                    if (!ca[i])
                        continue;
                    for (int j = 0; j < impl->dim; ++j) {
                        if (!cb[j])
                            continue;
                        std::int64_t s = static_cast<std::int64_t>(ca[i]) * cb[j];
                        const auto& pw = impl->xi_power[i + j];
                        for (int d = 0; d < impl->dim; ++d)
                            acc[d] += s * pw[d];
                    }
                }
                impl->mul_table[a * sz + b] = impl->addgrp.index_of(acc);
            }
        }
    }
    impl_ = std::move(impl);

    // xi has multiplicative order exactly n.
    for (std::int64_t e = 1; e < n; ++e)
        if (xi_pow(e) == one())
            throw CheckError("xi has order below n");
    if (xi_pow(n) != one())
        throw CheckError("xi^n is not 1");

    // xi_times - id bijective, by enumeration.
    {
        std::vector<std::uint8_t> seen(size(), 0);
        for (std::int64_t q = 0; q < size(); ++q) {
            int y = sub(xi_times(static_cast<int>(q)), static_cast<int>(q));
            if (seen[y])
                throw CheckError("xi_times - id is not injective");
            seen[y] = 1;
        }
    }
}

std::int64_t CycRing::p() const { return impl_->p; }
std::int64_t CycRing::n() const { return impl_->n; }
int CycRing::dim() const { return impl_->dim; }
std::int64_t CycRing::size() const { return impl_->addgrp.order(); }
const FinAbGroup& CycRing::additive_group() const { return impl_->addgrp; }

int CycRing::one() const {
    std::vector<std::int64_t> c(impl_->dim, 0);
    if (impl_->dim > 0)
        c[0] = 1;
    return from_coeffs(c);
}

int CycRing::add(int a, int b) const { return impl_->addgrp.add(a, b); }
int CycRing::neg(int a) const { return impl_->addgrp.neg(a); }
int CycRing::sub(int a, int b) const { return impl_->addgrp.sub(a, b); }

int CycRing::mul(int a, int b) const {
    return impl_->mul_table[static_cast<std::int64_t>(a) * size() + b];
}

int CycRing::xi_pow(std::int64_t e) const {
    const auto& pw = impl_->xi_power[mod_reduce(e, impl_->n)];
    std::vector<std::int64_t> c(pw.begin(), pw.end());
    return from_coeffs(c);
}

int CycRing::xi_times(int q) const {
    auto cq = coeffs(q);
    std::vector<std::int64_t> acc(impl_->dim, 0);
    for (int i = 0; i < impl_->dim; ++i) {
        if (!cq[i])
            continue;
        const auto& pw = impl_->xi_power[i + 1];
        for (int d = 0; d < impl_->dim; ++d)
            acc[d] += static_cast<std::int64_t>(cq[i]) * pw[d];
    }
    return from_coeffs(acc);
}

int CycRing::subst_pow(std::int64_t t, int q) const {
    if (std::gcd(mod_reduce(t, impl_->n), impl_->n) != 1)
        throw CheckError("substitution exponent " + std::to_string(t) +
                         " is not a unit mod " + std::to_string(impl_->n));
    auto cq = coeffs(q);
    std::vector<std::int64_t> acc(impl_->dim, 0);
    for (int i = 0; i < impl_->dim; ++i) {
        if (!cq[i])
            continue;
        const auto& pw = impl_->xi_power[mod_reduce(t * i, impl_->n)];
        for (int d = 0; d < impl_->dim; ++d)
            acc[d] += static_cast<std::int64_t>(cq[i]) * pw[d];
    }
    return from_coeffs(acc);
}

int CycRing::form(int u, int v) const {
    auto cu = coeffs(u);
    auto cv = coeffs(v);
    std::int64_t s = 0;
    for (int i = 0; i < impl_->dim; ++i) {
        if (!cu[i])
            continue;
        for (int j = 0; j < impl_->dim; ++j)
            s += static_cast<std::int64_t>(cu[i]) * cv[j] *
                 impl_->gram[j * impl_->dim + i];
    }
    return static_cast<int>(mod_reduce(s, impl_->p));
}

GroupAut CycRing::xi_times_aut() const {
    int d = impl_->dim;
    std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d, 0));
    for (int j = 0; j < d; ++j) {
        std::vector<std::int64_t> e(d, 0);
        e[j] = 1;
        auto col = coeffs(xi_times(from_coeffs(e)));
        for (int i = 0; i < d; ++i)
            m[i][j] = col[i];
    }
    return GroupAut::from_matrix(impl_->addgrp, m);
}

GroupAut CycRing::subst_pow_aut(std::int64_t t) const {
    int d = impl_->dim;
    std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d, 0));
    for (int j = 0; j < d; ++j) {
        std::vector<std::int64_t> e(d, 0);
        e[j] = 1;
        auto col = coeffs(subst_pow(t, from_coeffs(e)));
        for (int i = 0; i < d; ++i)
            m[i][j] = col[i];
    }
    return GroupAut::from_matrix(impl_->addgrp, m);
}

void CycRing::verify_twist_properties(std::int64_t t) const {
    std::int64_t sz = size();
    std::int64_t tr = mod_reduce(t, impl_->n);
    for (std::int64_t u = 0; u < sz; ++u) {
        int fu = subst_pow(tr, static_cast<int>(u));
        int cu = xi_times(static_cast<int>(u));
        // commutation: subst . xi_times = xi_times^t . subst
        int lhs = subst_pow(tr, xi_times(static_cast<int>(u)));
        int rhs = fu;
        for (std::int64_t k = 0; k < tr; ++k)
            rhs = xi_times(rhs);
        if (lhs != rhs)
            throw CheckError("substitution/xi-multiplication commutation fails at " +
                             label(static_cast<int>(u)));
        for (std::int64_t v = 0; v < sz; ++v) {
            if (form(fu, subst_pow(tr, static_cast<int>(v))) !=
                form(static_cast<int>(u), static_cast<int>(v)))
                throw CheckError("substitution does not preserve the form at (" +
                                 label(static_cast<int>(u)) + "," +
                                 label(static_cast<int>(v)) + ")");
            if (form(cu, xi_times(static_cast<int>(v))) !=
                form(static_cast<int>(u), static_cast<int>(v)))
                throw CheckError("xi-multiplication does not preserve the form at (" +
                                 label(static_cast<int>(u)) + "," +
                                 label(static_cast<int>(v)) + ")");
        }
    }
}

bool CycRing::form_nondegenerate() const { return impl_->nondegenerate; }

std::vector<int> CycRing::coeffs(int idx) const { return impl_->addgrp.tuple_of(idx); }

int CycRing::from_coeffs(std::span<const std::int64_t> c) const {
    return impl_->addgrp.index_of(c);
}

std::string CycRing::label(int idx) const {
    auto c = coeffs(idx);
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < impl_->dim; ++i) {
        if (!c[i])
            continue;
        if (!first)
            os << '+';
        first = false;
        if (i == 0)
            os << c[i];
        else {
            if (c[i] != 1)
                os << c[i] << '*';
            os << 'x';
            if (i > 1)
                os << '^' << i;
        }
    }
    if (first)
        os << '0';
    return os.str();
}

} // namespace ybx
