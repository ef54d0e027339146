#include "ybx/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ybx {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

} // namespace

// ---------------------------------------------------------------- FinAbGroup

struct FinAbGroup::Impl {
    std::vector<int> factors;
    std::vector<std::int64_t> stride; // stride[i] = product of factors after i
    std::int64_t order = 1;
    int exponent = 1;
    // Dense op tables for small groups; element arithmetic is hot in sweeps.
    std::vector<int> add_table;
    std::vector<int> neg_table;
};

FinAbGroup::FinAbGroup() : FinAbGroup(std::vector<int>{}) {}

FinAbGroup::FinAbGroup(std::vector<int> factors, std::int64_t max_order) {
    auto impl = std::make_shared<Impl>();
    impl->factors = std::move(factors);
    for (int n : impl->factors) {
        if (n < 2)
            throw CheckError("group factor below 2: Z" + std::to_string(n));
        if (impl->order > max_order / n) // overflow-safe cap test
            throw CapError("group order exceeds cap " + std::to_string(max_order));
        impl->order *= n;
        impl->exponent = static_cast<int>(std::lcm<std::int64_t>(impl->exponent, n));
    }
    int k = static_cast<int>(impl->factors.size());
    impl->stride.assign(k, 1);
    for (int i = k - 2; i >= 0; --i)
        impl->stride[i] = impl->stride[i + 1] * impl->factors[i + 1];

    if (impl->order <= 1024) {
        std::int64_t n = impl->order;
        impl->neg_table.resize(n);
        impl->add_table.resize(n * n);
        std::vector<int> ta(k), tb(k);
        for (std::int64_t a = 0; a < n; ++a) {
            std::int64_t rest = a;
            for (int i = 0; i < k; ++i) {
                ta[i] = static_cast<int>(rest / impl->stride[i]);
                rest %= impl->stride[i];
            }
            std::int64_t negidx = 0;
            for (int i = 0; i < k; ++i)
                negidx += mod_reduce(-ta[i], impl->factors[i]) * impl->stride[i];
            impl->neg_table[a] = static_cast<int>(negidx);
            for (std::int64_t b = 0; b < n; ++b) {
                std::int64_t rest2 = b, sum = 0;
                for (int i = 0; i < k; ++i) {
                    tb[i] = static_cast<int>(rest2 / impl->stride[i]);
                    rest2 %= impl->stride[i];
                    sum += ((ta[i] + tb[i]) % impl->factors[i]) * impl->stride[i];
                }
                impl->add_table[a * n + b] = static_cast<int>(sum);
            }
        }
    }
    impl_ = std::move(impl);
}

FinAbGroup FinAbGroup::parse(std::string_view text, std::int64_t max_order) {
    std::vector<int> factors;
    size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'Z')
            throw ParseError("bad group descriptor: expected 'Z' at position " +
                             std::to_string(pos) + " in '" + std::string(text) + "'");
        ++pos;
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            throw ParseError("bad group descriptor: missing factor in '" +
                             std::string(text) + "'");
        long long n = std::stoll(std::string(text.substr(start, pos - start)));
        if (n < 2)
            throw ParseError("group factor below 2: Z" + std::to_string(n));
        factors.push_back(static_cast<int>(n));
        if (pos < text.size()) {
            if (text[pos] != 'x')
                throw ParseError("bad group descriptor: expected 'x' at position " +
                                 std::to_string(pos) + " in '" + std::string(text) + "'");
            ++pos;
            if (pos == text.size())
                throw ParseError("bad group descriptor: trailing 'x' in '" +
                                 std::string(text) + "'");
        }
    }
    if (factors.empty())
        throw ParseError("empty group descriptor");
    return FinAbGroup(std::move(factors), max_order);
}

int FinAbGroup::rank() const { return static_cast<int>(impl_->factors.size()); }
int FinAbGroup::factor(int i) const { return impl_->factors.at(i); }
const std::vector<int>& FinAbGroup::factors() const { return impl_->factors; }
std::int64_t FinAbGroup::order() const { return impl_->order; }
int FinAbGroup::exponent() const { return impl_->exponent; }

int FinAbGroup::add(int a, int b) const {
    const Impl& im = *impl_;
    if (!im.add_table.empty())
        return im.add_table[static_cast<std::int64_t>(a) * im.order + b];
    std::int64_t idx = 0;
    for (int i = 0; i < rank(); ++i) {
        std::int64_t ra = (a / im.stride[i]) % im.factors[i];
        std::int64_t rb = (b / im.stride[i]) % im.factors[i];
        idx += ((ra + rb) % im.factors[i]) * im.stride[i];
    }
    return static_cast<int>(idx);
}

int FinAbGroup::neg(int a) const {
    const Impl& im = *impl_;
    if (!im.neg_table.empty())
        return im.neg_table[a];
    std::int64_t idx = 0;
    for (int i = 0; i < rank(); ++i) {
        std::int64_t ra = (a / im.stride[i]) % im.factors[i];
        idx += mod_reduce(-ra, im.factors[i]) * im.stride[i];
    }
    return static_cast<int>(idx);
}

int FinAbGroup::sub(int a, int b) const { return add(a, neg(b)); }

int FinAbGroup::scalar_mul(std::int64_t k, int a) const {
    const Impl& im = *impl_;
    std::int64_t idx = 0;
    for (int i = 0; i < rank(); ++i) {
        std::int64_t ra = (a / im.stride[i]) % im.factors[i];
        idx += mod_reduce(k * ra, im.factors[i]) * im.stride[i];
    }
    return static_cast<int>(idx);
}

std::vector<int> FinAbGroup::tuple_of(int idx) const {
    std::vector<int> t(rank());
    for (int i = 0; i < rank(); ++i)
        t[i] = static_cast<int>((idx / impl_->stride[i]) % impl_->factors[i]);
    return t;
}

int FinAbGroup::index_of(std::span<const std::int64_t> residues) const {
    if (static_cast<int>(residues.size()) != rank())
        throw CheckError("residue tuple has length " + std::to_string(residues.size()) +
                         ", expected " + std::to_string(rank()));
    std::int64_t idx = 0;
    for (int i = 0; i < rank(); ++i)
        idx += mod_reduce(residues[i], impl_->factors[i]) * impl_->stride[i];
    return static_cast<int>(idx);
}

std::string FinAbGroup::label(int idx) const {
    if (rank() == 0)
        return "0";
    auto t = tuple_of(idx);
    if (rank() == 1)
        return std::to_string(t[0]);
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < rank(); ++i)
        os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
}

std::string FinAbGroup::descriptor() const {
    if (rank() == 0)
        return "Z1";
    std::ostringstream os;
    for (int i = 0; i < rank(); ++i)
        os << (i ? "x" : "") << 'Z' << impl_->factors[i];
    return os.str();
}

bool FinAbGroup::operator==(const FinAbGroup& other) const {
    return impl_ == other.impl_ || impl_->factors == other.impl_->factors;
}

// ------------------------------------------------------------------ GroupAut

GroupAut::GroupAut(FinAbGroup g, std::vector<std::vector<std::int64_t>> m,
                   std::vector<int> perm)
    : group_(std::move(g)), matrix_(std::move(m)), perm_(std::move(perm)) {}

GroupAut GroupAut::identity(const FinAbGroup& g) {
    int k = g.rank();
    std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
    for (int i = 0; i < k; ++i)
        m[i][i] = 1;
    std::vector<int> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    return GroupAut(g, std::move(m), std::move(perm));
}

GroupAut GroupAut::from_matrix(const FinAbGroup& g,
                               const std::vector<std::vector<std::int64_t>>& m) {
    int k = g.rank();
    if (static_cast<int>(m.size()) != k)
        throw CheckError("automorphism matrix must be " + std::to_string(k) + "x" +
                         std::to_string(k));
    std::vector<std::vector<std::int64_t>> red(k, std::vector<std::int64_t>(k, 0));
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(m[i].size()) != k)
            throw CheckError("automorphism matrix row " + std::to_string(i) +
                             " has wrong length");
        for (int j = 0; j < k; ++j)
            red[i][j] = mod_reduce(m[i][j], g.factor(i));
    }
    // Well-definedness: the image of an order-n_j generator must have order
    // dividing n_j, i.e. n_i | m[i][j] * n_j.
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if ((red[i][j] * g.factor(j)) % g.factor(i) != 0)
                throw CheckError("matrix does not define a homomorphism: entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") = " + std::to_string(red[i][j]) +
                                 " violates the order condition");

    std::vector<int> perm(g.order());
    std::vector<std::uint8_t> seen(g.order(), 0);
    std::vector<std::int64_t> img(k);
    for (std::int64_t x = 0; x < g.order(); ++x) {
        auto t = g.tuple_of(static_cast<int>(x));
        for (int i = 0; i < k; ++i) {
            std::int64_t s = 0;
            for (int j = 0; j < k; ++j)
                s += red[i][j] * t[j];
            img[i] = s;
        }
        int y = g.index_of(img);
        if (seen[y])
            throw CheckError("matrix is not injective: " + g.label(static_cast<int>(x)) +
                             " collides at image " + g.label(y));
        seen[y] = 1;
        perm[x] = y;
    }
    return GroupAut(g, std::move(red), std::move(perm));
}

const FinAbGroup& GroupAut::group() const { return group_; }
int GroupAut::apply(int idx) const { return perm_[idx]; }
const std::vector<int>& GroupAut::perm() const { return perm_; }
const std::vector<std::vector<std::int64_t>>& GroupAut::matrix() const { return matrix_; }

GroupAut GroupAut::compose(const GroupAut& other) const {
    if (group_ != other.group_)
        throw CheckError("composing automorphisms of different groups");
    int k = group_.rank();
    std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::int64_t s = 0;
            for (int l = 0; l < k; ++l)
                s += matrix_[i][l] * other.matrix_[l][j];
            m[i][j] = mod_reduce(s, group_.factor(i));
        }
    std::vector<int> perm(group_.order());
    for (std::int64_t x = 0; x < group_.order(); ++x)
        perm[x] = perm_[other.perm_[x]];
    return GroupAut(group_, std::move(m), std::move(perm));
}

GroupAut GroupAut::inverse() const {
    // Column j of the inverse is the preimage of the j-th generator.
    std::vector<int> inv_perm(group_.order());
    for (std::int64_t x = 0; x < group_.order(); ++x)
        inv_perm[perm_[x]] = static_cast<int>(x);
    int k = group_.rank();
    std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
    std::vector<std::int64_t> gen(k, 0);
    for (int j = 0; j < k; ++j) {
        std::fill(gen.begin(), gen.end(), 0);
        gen[j] = 1;
        int pre = inv_perm[group_.index_of(gen)];
        auto t = group_.tuple_of(pre);
        for (int i = 0; i < k; ++i)
            m[i][j] = t[i];
    }
    return GroupAut(group_, std::move(m), std::move(inv_perm));
}

GroupAut GroupAut::pow(std::int64_t e) const {
    GroupAut base = e >= 0 ? *this : inverse();
    std::int64_t n = e >= 0 ? e : -e;
    GroupAut acc = identity(group_);
    while (n > 0) {
        if (n & 1)
            acc = acc.compose(base);
        base = base.compose(base);
        n >>= 1;
    }
    return acc;
}

bool GroupAut::is_identity() const {
    for (std::int64_t x = 0; x < group_.order(); ++x)
        if (perm_[x] != x)
            return false;
    return true;
}

int GroupAut::order() const {
    GroupAut p = *this;
    int s = 1;
    while (!p.is_identity()) {
        p = p.compose(*this);
        ++s;
        if (s > group_.order() * group_.order())
            throw CheckError("automorphism order runaway"); // unreachable
    }
    return s;
}

std::optional<GroupAut> GroupAut::minus_identity() const {
    int k = group_.rank();
    std::vector<std::vector<std::int64_t>> m = matrix_;
    for (int i = 0; i < k; ++i)
        m[i][i] -= 1;
    try {
        return from_matrix(group_, m);
    } catch (const CheckError&) {
        return std::nullopt;
    }
}

bool GroupAut::operator==(const GroupAut& other) const {
    return group_ == other.group_ && perm_ == other.perm_;
}

std::vector<GroupAut> all_automorphisms(const FinAbGroup& g) {
    int k = g.rank();
    if (k == 0)
        return {GroupAut::identity(g)};
    // Cell (i,j) must be a multiple of factor(i)/gcd(factor(i),factor(j));
    // enumerate only those candidates.
    struct Cell {
        std::int64_t step;
        std::int64_t count;
    };
    std::vector<Cell> cells(k * k);
    std::int64_t total = 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::int64_t gg = std::gcd<std::int64_t>(g.factor(i), g.factor(j));
            cells[i * k + j] = {g.factor(i) / gg, gg};
            total *= gg;
            if (total > 2000000)
                throw CapError("automorphism enumeration space too large for " +
                               g.descriptor());
        }
    std::vector<GroupAut> out;
    std::vector<std::int64_t> digit(k * k, 0);
    std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
    for (std::int64_t it = 0; it < total; ++it) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                m[i][j] = digit[i * k + j] * cells[i * k + j].step;
        try {
            out.push_back(GroupAut::from_matrix(g, m));
        } catch (const CheckError&) {
            // not bijective; skip
        }
        for (int c = k * k - 1; c >= 0; --c) {
            if (++digit[c] < cells[c].count)
                break;
            digit[c] = 0;
        }
    }
    return out;
}

// ------------------------------------------------------------------ Subgroup

Subgroup::Subgroup(FinAbGroup g, std::vector<std::uint8_t> member,
                   std::vector<int> members, std::vector<int> gens)
    : group_(std::move(g)), member_(std::move(member)), members_(std::move(members)),
      gens_(std::move(gens)) {}

Subgroup Subgroup::generated(const FinAbGroup& g, std::span<const int> gens) {
    std::vector<std::uint8_t> member(g.order(), 0);
    std::vector<int> members;
    std::vector<int> work;
    member[g.zero()] = 1;
    members.push_back(g.zero());
    work.push_back(g.zero());
    std::vector<int> gen_list(gens.begin(), gens.end());
    // BFS closure under adding each generator; in a finite group this also
    // yields inverses.
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int ge : gen_list) {
            int y = g.add(x, ge);
            if (!member[y]) {
                member[y] = 1;
                members.push_back(y);
                work.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup(g, std::move(member), std::move(members), std::move(gen_list));
}

Subgroup Subgroup::trivial(const FinAbGroup& g) {
    return generated(g, std::span<const int>{});
}

const FinAbGroup& Subgroup::group() const { return group_; }
std::int64_t Subgroup::size() const { return static_cast<std::int64_t>(members_.size()); }
bool Subgroup::contains(int idx) const { return member_[idx] != 0; }
const std::vector<int>& Subgroup::members() const { return members_; }
const std::vector<int>& Subgroup::generators() const { return gens_; }
bool Subgroup::is_whole_group() const { return size() == group_.order(); }

bool Subgroup::operator==(const Subgroup& other) const {
    return group_ == other.group_ && members_ == other.members_;
}

// ------------------------------------------------------------------ quotient

namespace {

// Smith normal form of a k x c integer matrix; returns the diagonal and the
// left transform u (u * a_orig * v = diag). Entry growth is harmless at the
// sizes handled here.
void smith_diagonal(std::vector<std::vector<std::int64_t>> a,
                    std::vector<std::int64_t>& diag,
                    std::vector<std::vector<std::int64_t>>& u) {
    int k = static_cast<int>(a.size());
    int c = k ? static_cast<int>(a[0].size()) : 0;
    u.assign(k, std::vector<std::int64_t>(k, 0));
    for (int i = 0; i < k; ++i)
        u[i][i] = 1;

    auto swap_rows = [&](int r1, int r2) {
        std::swap(a[r1], a[r2]);
        std::swap(u[r1], u[r2]);
    };
    auto addmul_row = [&](int dst, int src, std::int64_t q) {
        for (int j = 0; j < c; ++j)
            a[dst][j] += q * a[src][j];
        for (int j = 0; j < k; ++j)
            u[dst][j] += q * u[src][j];
    };
    auto swap_cols = [&](int c1, int c2) {
        for (int i = 0; i < k; ++i)
            std::swap(a[i][c1], a[i][c2]);
    };
    auto addmul_col = [&](int dst, int src, std::int64_t q) {
        for (int i = 0; i < k; ++i)
            a[i][dst] += q * a[i][src];
    };

    int t = 0;
    while (t < k && t < c) {
        int pi = -1, pj = -1;
        std::int64_t best = 0;
        for (int i = t; i < k; ++i)
            for (int j = t; j < c; ++j)
                if (a[i][j] != 0 &&
                    (pi < 0 || std::abs(a[i][j]) < best)) {
                    best = std::abs(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (pi < 0)
            break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < k; ++i)
                if (a[i][t] != 0) {
                    std::int64_t q = a[i][t] / a[t][t];
                    addmul_row(i, t, -q);
                    if (a[i][t] != 0) {
                        swap_rows(t, i);
                        clean = false;
                    }
                }
            for (int j = t + 1; j < c; ++j)
                if (a[t][j] != 0) {
                    std::int64_t q = a[t][j] / a[t][t];
                    addmul_col(j, t, -q);
                    if (a[t][j] != 0) {
                        swap_cols(t, j);
                        clean = false;
                    }
                }
            if (clean) {
                // pivot must divide every remaining entry
                for (int i = t + 1; i < k && clean; ++i)
                    for (int j = t + 1; j < c && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            addmul_row(t, i, 1);
                            clean = false;
                        }
            }
        }
        if (a[t][t] < 0) {
            for (int j = 0; j < c; ++j)
                a[t][j] = -a[t][j];
            for (int j = 0; j < k; ++j)
                u[t][j] = -u[t][j];
        }
        ++t;
    }
    diag.assign(k, 0);
    for (int i = 0; i < k && i < c; ++i)
        diag[i] = a[i][i];
}

} // namespace

QuotientGroup quotient(const FinAbGroup& g, const Subgroup& s) {
    if (s.group() != g)
        throw CheckError("subgroup belongs to a different group");
    int k = g.rank();
    if (k == 0)
        return {FinAbGroup(), std::vector<int>(1, 0)};

    // Relation lattice: the factor relations n_i e_i plus a lift of every
    // subgroup generator/member.
    std::vector<std::vector<std::int64_t>> rel(
        k, std::vector<std::int64_t>(k + s.members().size(), 0));
    for (int i = 0; i < k; ++i)
        rel[i][i] = g.factor(i);
    for (size_t m = 0; m < s.members().size(); ++m) {
        auto t = g.tuple_of(s.members()[m]);
        for (int i = 0; i < k; ++i)
            rel[i][k + m] = t[i];
    }
    std::vector<std::int64_t> diag;
    std::vector<std::vector<std::int64_t>> u;
    smith_diagonal(std::move(rel), diag, u);
    for (int i = 0; i < k; ++i)
        if (diag[i] == 0)
            throw CheckError("quotient lattice not of full rank"); // unreachable

    std::vector<int> kept;
    std::vector<int> qfactors;
    for (int i = 0; i < k; ++i)
        if (diag[i] > 1) {
            kept.push_back(i);
            qfactors.push_back(static_cast<int>(diag[i]));
        }
    FinAbGroup q(qfactors);

    std::vector<int> proj(g.order());
    std::vector<std::int64_t> coords(kept.size());
    for (std::int64_t x = 0; x < g.order(); ++x) {
        auto t = g.tuple_of(static_cast<int>(x));
        for (size_t c = 0; c < kept.size(); ++c) {
            std::int64_t v = 0;
            for (int j = 0; j < k; ++j)
                v += u[kept[c]][j] * t[j];
            coords[c] = mod_reduce(v, diag[kept[c]]);
        }
        proj[x] = q.index_of(coords);
    }

    // Certify: homomorphism, kernel exactly s, counting identity.
    if (g.order() != s.size() * q.order())
        throw CheckError("quotient size mismatch: |G| != |S|*|G/S|");
    std::int64_t kernel = 0;
    for (std::int64_t x = 0; x < g.order(); ++x) {
        if (proj[x] == q.zero()) {
            ++kernel;
            if (!s.contains(static_cast<int>(x)))
                throw CheckError("quotient kernel leaks outside the subgroup");
        }
    }
    if (kernel != s.size())
        throw CheckError("quotient kernel has wrong size");
    for (std::int64_t x = 0; x < g.order(); ++x)
        for (std::int64_t y = 0; y < g.order(); ++y)
            if (proj[g.add(static_cast<int>(x), static_cast<int>(y))] !=
                q.add(proj[x], proj[y]))
                throw CheckError("quotient projection is not a homomorphism at (" +
                                 g.label(static_cast<int>(x)) + "," +
                                 g.label(static_cast<int>(y)) + ")");
    return {std::move(q), std::move(proj)};
}

} // namespace ybx
