#include "ybx/brace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ybx {

namespace {

std::string elem_name(const std::vector<std::string>& labels, int x) {
    if (x < static_cast<int>(labels.size()) && !labels[x].empty())
        return labels[x];
    return std::to_string(x);
}

} // namespace

// --------------------------------------------------------------- FiniteBrace

FiniteBrace FiniteBrace::make(const std::vector<std::vector<int>>& add,
                              const std::vector<std::vector<int>>& mul,
                              std::vector<std::string> labels, std::int64_t cap) {
    int m = static_cast<int>(add.size());
    if (m == 0)
        throw CheckError("brace must be nonempty");
    if (m > cap)
        throw CapError("brace size " + std::to_string(m) + " exceeds cap " +
                       std::to_string(cap));
    if (static_cast<int>(mul.size()) != m)
        throw CheckError("addition and multiplication tables have different sizes");
    FiniteBrace b;
    b.m_ = m;
    b.add_.reserve(static_cast<std::size_t>(m) * m);
    b.mul_.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(add[i].size()) != m || static_cast<int>(mul[i].size()) != m)
            throw CheckError("table row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < m; ++j) {
            if (add[i][j] < 0 || add[i][j] >= m || mul[i][j] < 0 || mul[i][j] >= m)
                throw CheckError("table entry out of range at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
        }
        b.add_.insert(b.add_.end(), add[i].begin(), add[i].end());
        b.mul_.insert(b.mul_.end(), mul[i].begin(), mul[i].end());
    }
    if (labels.empty()) {
        labels.resize(m);
        for (int i = 0; i < m; ++i)
            labels[i] = std::to_string(i);
    }
    if (static_cast<int>(labels.size()) != m)
        throw CheckError("label list size mismatch");
    b.labels_ = std::move(labels);

    auto name = [&](int x) { return elem_name(b.labels_, x); };

    // Additive neutral.
    int zero = -1;
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            ok = b.add(e, x) == x;
        if (ok) {
            zero = e;
            break;
        }
    }
    if (zero < 0)
        throw CheckError("additive table has no neutral element");
    // Multiplicative neutral.
    int one = -1;
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            ok = b.mul(e, x) == x && b.mul(x, e) == x;
        if (ok) {
            one = e;
            break;
        }
    }
    if (one < 0)
        throw CheckError("multiplicative table has no neutral element");
    if (zero != one)
        throw CheckError("additive and multiplicative neutral elements differ: " +
                         name(zero) + " vs " + name(one));
    b.zero_ = zero;

    // Abelian group on +.
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (b.add(x, y) != b.add(y, x))
                throw CheckError("addition is not commutative at (" + name(x) + "," +
                                 name(y) + ")");
    b.neg_.assign(m, -1);
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y)
            if (b.add(x, y) == zero) {
                b.neg_[x] = y;
                break;
            }
        if (b.neg_[x] < 0)
            throw CheckError("element " + name(x) + " has no additive inverse");
    }
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                if (b.add(b.add(x, y), z) != b.add(x, b.add(y, z)))
                    throw CheckError("addition is not associative at (" + name(x) + "," +
                                     name(y) + "," + name(z) + ")");

    // Group on *.
    b.inv_.assign(m, -1);
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y)
            if (b.mul(x, y) == one && b.mul(y, x) == one) {
                b.inv_[x] = y;
                break;
            }
        if (b.inv_[x] < 0)
            throw CheckError("element " + name(x) + " has no multiplicative inverse");
    }
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                if (b.mul(b.mul(x, y), z) != b.mul(x, b.mul(y, z)))
                    throw CheckError("multiplication is not associative at (" + name(x) +
                                     "," + name(y) + "," + name(z) + ")");

    // The brace law on every triple.
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                if (b.add(b.mul(a, b.add(x, y)), a) !=
                    b.add(b.mul(a, x), b.mul(a, y)))
                    throw CheckError("brace law fails at (" + name(a) + "," + name(x) +
                                     "," + name(y) + ")");

    // Lambda table; each row must be an additive automorphism, and lambda
    // must turn * into composition.
    b.lambda_.assign(static_cast<std::size_t>(m) * m, -1);
    b.lambda_inv_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int a = 0; a < m; ++a) {
        std::vector<std::uint8_t> seen(m, 0);
        for (int x = 0; x < m; ++x) {
            int v = b.add(b.neg_[a], b.mul(a, x));
            b.lambda_[static_cast<std::size_t>(a) * m + x] = v;
            if (seen[v])
                throw CheckError("lambda row " + name(a) + " is not a permutation");
            seen[v] = 1;
            b.lambda_inv_[static_cast<std::size_t>(a) * m + v] = x;
        }
    }
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                if (b.lambda(a, b.add(x, y)) != b.add(b.lambda(a, x), b.lambda(a, y)))
                    throw CheckError("lambda_" + name(a) +
                                     " is not additive at (" + name(x) + "," + name(y) +
                                     ")");
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
            int ac = b.mul(a, c);
            for (int x = 0; x < m; ++x)
                if (b.lambda(ac, x) != b.lambda(a, b.lambda(c, x)))
                    throw CheckError("lambda is not multiplicative at (" + name(a) +
                                     "," + name(c) + ") on " + name(x));
        }
    return b;
}

bool FiniteBrace::is_trivial() const {
    return add_ == mul_;
}

// ------------------------------------------------------------------- subsets

BraceSubset classify_subset(const FiniteBrace& b, std::span<const int> members) {
    int m = b.size();
    BraceSubset s;
    s.member.assign(m, 0);
    for (int x : members) {
        if (x < 0 || x >= m)
            throw CheckError("subset member out of range");
        s.member[x] = 1;
    }
    s.members.assign(members.begin(), members.end());
    std::sort(s.members.begin(), s.members.end());
    s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());

    bool add_closed = s.member[b.zero()];
    for (int x : s.members)
        for (int y : s.members)
            if (!s.member[b.add(x, y)] || !s.member[b.neg(x)])
                add_closed = false;
    bool lam_closed = true;
    for (int a = 0; a < m && lam_closed; ++a)
        for (int x : s.members)
            if (!s.member[b.lambda(a, x)]) {
                lam_closed = false;
                break;
            }
    s.left_ideal = add_closed && lam_closed;

    bool mul_normal = s.member[b.zero()];
    for (int x : s.members)
        for (int y : s.members)
            if (!s.member[b.mul(x, y)] || !s.member[b.inv(x)])
                mul_normal = false;
    for (int g = 0; g < m && mul_normal; ++g)
        for (int x : s.members)
            if (!s.member[b.mul(b.mul(g, x), b.inv(g))]) {
                mul_normal = false;
                break;
            }
    s.ideal = s.left_ideal && mul_normal;
    return s;
}

BraceSubset socle(const FiniteBrace& b) {
    std::vector<int> members;
    for (int a = 0; a < b.size(); ++a) {
        bool in = true;
        for (int x = 0; x < b.size() && in; ++x)
            in = b.mul(a, x) == b.add(a, x);
        if (in)
            members.push_back(a);
    }
    BraceSubset s = classify_subset(b, members);
    if (!s.ideal)
        throw CheckError("socle failed its ideal certification"); // bug signal
    return s;
}

BraceSubset ideal_generated(const FiniteBrace& b, int a) {
    int m = b.size();
    if (a < 0 || a >= m)
        throw CheckError("element out of range");
    std::vector<std::uint8_t> in(m, 0);
    std::vector<int> members;
    std::vector<int> work;
    auto insert = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
            work.push_back(x);
        }
    };
    insert(b.zero());
    insert(a);
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        insert(b.neg(x));
        // additive closure against current members (members may grow; new
        // entries land on the worklist and redo the pass)
        for (std::size_t i = 0; i < members.size(); ++i)
            insert(b.add(x, members[i]));
        for (int g = 0; g < m; ++g) {
            insert(b.lambda(g, x));
            insert(b.mul(b.mul(g, x), b.inv(g)));
        }
    }
    BraceSubset s = classify_subset(b, members);
    if (!s.ideal)
        throw CheckError("principal ideal closure is not an ideal"); // bug signal
    return s;
}

bool is_simple_brace(const FiniteBrace& b) {
    if (b.size() <= 1)
        throw CheckError("simplicity is defined for braces with more than one element");
    for (int a = 0; a < b.size(); ++a) {
        if (a == b.zero())
            continue;
        if (static_cast<int>(ideal_generated(b, a).members.size()) != b.size())
            return false;
    }
    return true;
}

std::vector<std::vector<int>> enumerate_ideals(const FiniteBrace& b,
                                               std::int64_t max_size) {
    if (b.size() > max_size)
        throw CapError("ideal enumeration limited to braces of size <= " +
                       std::to_string(max_size));
    std::vector<std::vector<int>> ideals;
    auto add_unique = [&](std::vector<int> v) {
        if (std::find(ideals.begin(), ideals.end(), v) == ideals.end()) {
            ideals.push_back(std::move(v));
            return true;
        }
        return false;
    };
    add_unique({b.zero()});
    for (int a = 0; a < b.size(); ++a)
        if (a != b.zero())
            add_unique(ideal_generated(b, a).members);
    // Close under joins: the join of two ideals is the ideal generated by
    // their union, which equals the additive closure here; reuse the
    // principal-closure engine on union seeds.
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t count = ideals.size();
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                std::vector<std::uint8_t> in(b.size(), 0);
                std::vector<int> members, work;
                auto insert = [&](int x) {
                    if (!in[x]) {
                        in[x] = 1;
                        members.push_back(x);
                        work.push_back(x);
                    }
                };
                for (int x : ideals[i])
                    insert(x);
                for (int x : ideals[j])
                    insert(x);
                while (!work.empty()) {
                    int x = work.back();
                    work.pop_back();
                    for (std::size_t t = 0; t < members.size(); ++t)
                        insert(b.add(x, members[t]));
                }
                if (!classify_subset(b, members).ideal)
                    throw CheckError("join of ideals failed certification");
                std::sort(members.begin(), members.end());
                if (add_unique(std::move(members)))
                    grew = true;
            }
    }
    std::sort(ideals.begin(), ideals.end(),
              [](const auto& a, const auto& c) {
                  return a.size() != c.size() ? a.size() < c.size() : a < c;
              });
    return ideals;
}

// -------------------------------------------------------------- constructors

FiniteBrace trivial_brace(const FinAbGroup& g, std::int64_t cap) {
    std::int64_t n = g.order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (std::int64_t a = 0; a < n; ++a) {
        labels[a] = g.label(static_cast<int>(a));
        for (std::int64_t b = 0; b < n; ++b)
            t[a][b] = g.add(static_cast<int>(a), static_cast<int>(b));
    }
    return FiniteBrace::make(t, t, std::move(labels), cap);
}

FiniteBrace semidirect_trivial(const FinAbGroup& a, const FinAbGroup& t,
                               const std::vector<GroupAut>& action,
                               std::int64_t cap) {
    if (static_cast<std::int64_t>(action.size()) != t.order())
        throw CheckError("action table must have one automorphism per element of " +
                         t.descriptor());
    for (const auto& f : action)
        if (f.group() != a)
            throw CheckError("action automorphism acts on the wrong group");
    if (!action[t.zero()].is_identity())
        throw CheckError("action of the neutral element is not the identity");
    for (std::int64_t s1 = 0; s1 < t.order(); ++s1)
        for (std::int64_t s2 = 0; s2 < t.order(); ++s2) {
            int s12 = t.add(static_cast<int>(s1), static_cast<int>(s2));
            if (action[s12] !=
                action[s1].compose(action[static_cast<std::size_t>(s2)]))
                throw CheckError("action is not a homomorphism at (" +
                                 t.label(static_cast<int>(s1)) + "," +
                                 t.label(static_cast<int>(s2)) + ")");
        }

    std::int64_t na = a.order(), nt = t.order(), m = na * nt;
    if (m > cap)
        throw CapError("semidirect product size exceeds cap");
    auto idx = [&](int xa, int xt) { return static_cast<int>(xa * nt + xt); };
    std::vector<std::vector<int>> add(m, std::vector<int>(m));
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    std::vector<std::string> labels(m);
    for (int xa = 0; xa < na; ++xa)
        for (int xt = 0; xt < nt; ++xt) {
            labels[idx(xa, xt)] = "(" + a.label(xa) + "|" + t.label(xt) + ")";
            for (int ya = 0; ya < na; ++ya)
                for (int yt = 0; yt < nt; ++yt) {
                    add[idx(xa, xt)][idx(ya, yt)] = idx(a.add(xa, ya), t.add(xt, yt));
                    mul[idx(xa, xt)][idx(ya, yt)] =
                        idx(a.add(xa, action[xt].apply(ya)), t.add(xt, yt));
                }
        }
    return FiniteBrace::make(add, mul, std::move(labels), cap);
}

FiniteBrace asymmetric_product(const FiniteBrace& left, const FiniteBrace& right,
                               const std::vector<std::vector<int>>& action,
                               const std::vector<std::vector<int>>& form,
                               std::int64_t cap) {
    int nl = left.size(), nr = right.size();
    if (static_cast<int>(action.size()) != nr)
        throw CheckError("action table must be indexed by the right component");
    if (static_cast<int>(form.size()) != nl)
        throw CheckError("form table must be indexed by the left component");
    for (const auto& row : action)
        if (static_cast<int>(row.size()) != nl)
            throw CheckError("action row has wrong length");
    for (const auto& row : form)
        if (static_cast<int>(row.size()) != nl)
            throw CheckError("form row has wrong length");

    // Each action value must be a brace automorphism of the left component.
    for (int r = 0; r < nr; ++r) {
        const auto& f = action[r];
        std::vector<std::uint8_t> seen(nl, 0);
        for (int x = 0; x < nl; ++x) {
            if (f[x] < 0 || f[x] >= nl || seen[f[x]])
                throw CheckError("action of " + elem_name(right.labels(), r) +
                                 " is not a bijection of the left component");
            seen[f[x]] = 1;
        }
        for (int x = 0; x < nl; ++x)
            for (int y = 0; y < nl; ++y) {
                if (f[left.add(x, y)] != left.add(f[x], f[y]))
                    throw CheckError("action of " + elem_name(right.labels(), r) +
                                     " is not additive at (" +
                                     elem_name(left.labels(), x) + "," +
                                     elem_name(left.labels(), y) + ")");
                if (f[left.mul(x, y)] != left.mul(f[x], f[y]))
                    throw CheckError("action of " + elem_name(right.labels(), r) +
                                     " is not multiplicative at (" +
                                     elem_name(left.labels(), x) + "," +
                                     elem_name(left.labels(), y) + ")");
            }
    }
    // Homomorphism from the multiplicative group of the right component.
    {
        const auto& id = action[right.zero()];
        for (int x = 0; x < nl; ++x)
            if (id[x] != x)
                throw CheckError("action of the neutral element is not the identity");
    }
    for (int r1 = 0; r1 < nr; ++r1)
        for (int r2 = 0; r2 < nr; ++r2) {
            int r12 = right.mul(r1, r2);
            for (int x = 0; x < nl; ++x)
                if (action[r12][x] != action[r1][action[r2][x]])
                    throw CheckError("action is not a homomorphism at (" +
                                     elem_name(right.labels(), r1) + "," +
                                     elem_name(right.labels(), r2) + ")");
        }

    // Form: symmetric, biadditive, vanishing on zero.
    for (int x = 0; x < nl; ++x) {
        if (form[x][left.zero()] != right.zero() || form[left.zero()][x] != right.zero())
            throw CheckError("form does not vanish on the zero element");
        for (int y = 0; y < nl; ++y) {
            if (form[x][y] != form[y][x])
                throw CheckError("form is not symmetric at (" +
                                 elem_name(left.labels(), x) + "," +
                                 elem_name(left.labels(), y) + ")");
            for (int z = 0; z < nl; ++z)
                if (form[left.add(x, y)][z] != right.add(form[x][z], form[y][z]))
                    throw CheckError("form is not biadditive at (" +
                                     elem_name(left.labels(), x) + "+" +
                                     elem_name(left.labels(), y) + "," +
                                     elem_name(left.labels(), z) + ")");
        }
    }
    // Compatibility between the action and the form.
    for (int r = 0; r < nr; ++r)
        for (int x = 0; x < nl; ++x)
            for (int y = 0; y < nl; ++y)
                if (right.lambda(r, form[x][y]) != form[action[r][x]][action[r][y]])
                    throw CheckError(
                        "action/form compatibility fails at (" +
                        elem_name(right.labels(), r) + "," +
                        elem_name(left.labels(), x) + "," +
                        elem_name(left.labels(), y) + ")");

    std::int64_t m = static_cast<std::int64_t>(nl) * nr;
    if (m > cap)
        throw CapError("asymmetric product size exceeds cap");
    auto idx = [&](int f, int a) { return static_cast<int>(f * nr + a); };
    std::vector<std::vector<int>> add(m, std::vector<int>(m));
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    std::vector<std::string> labels(m);
    for (int f = 0; f < nl; ++f)
        for (int a = 0; a < nr; ++a) {
            labels[idx(f, a)] =
                "(" + elem_name(left.labels(), f) + "|" + elem_name(right.labels(), a) +
                ")";
            for (int h = 0; h < nl; ++h)
                for (int c = 0; c < nr; ++c) {
                    add[idx(f, a)][idx(h, c)] =
                        idx(left.add(f, h), right.add(right.add(a, c), form[f][h]));
                    mul[idx(f, a)][idx(h, c)] =
                        idx(left.mul(f, action[a][h]), right.mul(a, c));
                }
        }
    FiniteBrace b = FiniteBrace::make(add, mul, std::move(labels), cap);

    // The projection onto the right component is always a homomorphism of
    // multiplicative groups with normal kernel {(f, 0)}; when the form
    // vanishes identically it is a full brace homomorphism and the kernel is
    // an ideal (the product degenerates to a semidirect one).
    bool zero_form = true;
    for (int f = 0; f < nl && zero_form; ++f)
        for (int h = 0; h < nl && zero_form; ++h)
            zero_form = form[f][h] == right.zero();
    for (int x = 0; x < b.size(); ++x)
        for (int y = 0; y < b.size(); ++y) {
            if (b.mul(x, y) % nr != right.mul(x % nr, y % nr))
                throw CheckError("projection onto the right component is not a "
                                 "multiplicative homomorphism");
            if (zero_form && b.add(x, y) % nr != right.add(x % nr, y % nr))
                throw CheckError("projection onto the right component is not "
                                 "additive despite a vanishing form");
        }
    std::vector<int> kernel;
    for (int f = 0; f < nl; ++f)
        kernel.push_back(idx(f, right.zero()));
    BraceSubset ks = classify_subset(b, kernel);
    if (zero_form && !ks.ideal)
        throw CheckError("projection kernel is not an ideal despite a vanishing "
                         "form");
    for (int g = 0; g < b.size(); ++g)
        for (int x : kernel)
            if (b.mul(b.mul(g, x), b.inv(g)) % nr != right.zero())
                throw CheckError("projection kernel is not a normal subgroup");
    return b;
}

// ----------------------------------------------------- brace from a solution

SolutionBrace brace_from_solution(const Solution& s, std::int64_t perm_cap,
                                  std::int64_t brace_cap) {
    PermGroup g = permutation_group(s, perm_cap);
    std::int64_t m = g.size();
    if (m > brace_cap)
        throw CapError("permutation group of size " + std::to_string(m) +
                       " exceeds the brace cap");

    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c)
            mul[a][c] = g.compose(a, c);

    std::vector<int> inv_elem(m);
    for (int e = 0; e < m; ++e)
        inv_elem[e] = g.inverse(e);

    // Addition: g + id = g; g + sigma_z = g . sigma_{g^{-1}(z)}; and along a
    // BFS factorization h = h' . sigma_y,  g + h = (g + h') + sigma_{h'(y)}.
    std::vector<std::vector<int>> add(m, std::vector<int>(m, -1));
    std::vector<int> inv_perm(s.size());
    for (int gidx = 0; gidx < m; ++gidx)
        add[gidx][g.identity()] = gidx;
    for (int h = 0; h < m; ++h) {
        if (h == g.identity())
            continue;
        PermGroup::Word w = g.word(h);
        if (w.parent >= h)
            throw CheckError("BFS order violated in the group closure"); // bug
        int z = g.apply(w.parent, w.point);
        for (int a = 0; a < m; ++a) {
            int u = add[a][w.parent];
            // u + sigma_z = u . sigma_{u^{-1}(z)}
            int ui = inv_elem[u];
            int su = g.sigma_element(g.apply(ui, z));
            add[a][h] = mul[u][su];
        }
    }

    std::vector<std::string> labels(m);
    for (int e = 0; e < m; ++e)
        labels[e] = g.cycle_label(e);
    FiniteBrace b = FiniteBrace::make(add, mul, std::move(labels), brace_cap);
    if (b.zero() != g.identity())
        throw CheckError("brace neutral element is not the identity permutation");

    // Compatibility with the solution: lambda_{sigma_x}(sigma_y) =
    // sigma_{sigma_x(y)} for all points.
    std::vector<int> sigma_elem(s.size());
    for (int x = 0; x < s.size(); ++x)
        sigma_elem[x] = g.sigma_element(x);
    for (int x = 0; x < s.size(); ++x)
        for (int y = 0; y < s.size(); ++y)
            if (b.lambda(sigma_elem[x], sigma_elem[y]) != sigma_elem[s.sigma(x, y)])
                throw CheckError("brace lambda disagrees with the solution at (" +
                                 std::to_string(x) + "," + std::to_string(y) + ")");
    return {std::move(b), std::move(g), std::move(sigma_elem)};
}

// ------------------------------------------------------------------ quotient

QuotientBrace quotient_brace(const FiniteBrace& b, const BraceSubset& ideal) {
    if (!ideal.ideal)
        throw CheckError("quotient requires a verified ideal");
    int m = b.size();
    // Additive cosets; for an ideal these coincide with multiplicative ones.
    std::vector<int> coset(m, -1);
    std::vector<int> reps;
    for (int x = 0; x < m; ++x) {
        if (coset[x] != -1)
            continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int i : ideal.members)
            coset[b.add(x, i)] = id;
        if (coset[x] != id)
            throw CheckError("ideal coset structure broken"); // bug signal
    }
    int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> add(q, std::vector<int>(q, -1));
    std::vector<std::vector<int>> mul(q, std::vector<int>(q, -1));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int cx = coset[x], cy = coset[y];
            int ca = coset[b.add(x, y)];
            int cm = coset[b.mul(x, y)];
            if (add[cx][cy] == -1)
                add[cx][cy] = ca;
            else if (add[cx][cy] != ca)
                throw CheckError("quotient addition ill-defined on cosets (" +
                                 std::to_string(cx) + "," + std::to_string(cy) + ")");
            if (mul[cx][cy] == -1)
                mul[cx][cy] = cm;
            else if (mul[cx][cy] != cm)
                throw CheckError("quotient multiplication ill-defined on cosets (" +
                                 std::to_string(cx) + "," + std::to_string(cy) + ")");
        }
    std::vector<std::string> labels(q);
    for (int c = 0; c < q; ++c)
        labels[c] = "[" + elem_name(b.labels(), reps[c]) + "]";
    FiniteBrace bq = FiniteBrace::make(add, mul, std::move(labels));
    return {std::move(bq), std::move(coset)};
}

// --------------------------------------------------------------- isomorphism

namespace {

using ElemKey = std::tuple<std::int64_t, std::int64_t, int, int>;

std::int64_t element_add_order(const FiniteBrace& b, int a) {
    int x = a;
    std::int64_t k = 1;
    while (x != b.zero()) {
        x = b.add(x, a);
        ++k;
    }
    return k;
}

std::int64_t element_mul_order(const FiniteBrace& b, int a) {
    int x = a;
    std::int64_t k = 1;
    while (x != b.zero()) {
        x = b.mul(x, a);
        ++k;
    }
    return k;
}

// Isomorphism-invariant per-element keys: additive order, multiplicative
// order, multiplicative conjugacy class size, socle membership.
std::vector<ElemKey> element_keys(const FiniteBrace& b) {
    int m = b.size();
    std::vector<int> cls(m, -1);
    std::vector<int> cls_size;
    for (int x = 0; x < m; ++x) {
        if (cls[x] != -1)
            continue;
        int id = static_cast<int>(cls_size.size());
        int count = 0;
        for (int g = 0; g < m; ++g) {
            int y = b.mul(b.mul(g, x), b.inv(g));
            if (cls[y] == -1) {
                cls[y] = id;
                ++count;
            }
        }
        cls_size.push_back(count);
    }
    auto soc = socle(b);
    std::vector<ElemKey> keys(m);
    for (int x = 0; x < m; ++x)
        keys[x] = {element_add_order(b, x), element_mul_order(b, x),
                   cls_size[cls[x]], soc.member[x] ? 1 : 0};
    return keys;
}

struct BraceIso {
    const FiniteBrace& b1;
    const FiniteBrace& b2;
    std::vector<std::int64_t> sig1, sig2; // jointly aligned class ids
    std::vector<int> f, finv;
    std::vector<int> assigned; // elements of b1 with known image, closure order

    bool force(int x, int y) {
        if (f[x] != -1)
            return f[x] == y;
        if (finv[y] != -1 || sig1[x] != sig2[y])
            return false;
        f[x] = y;
        finv[y] = x;
        assigned.push_back(x);
        return true;
    }

    bool close(std::size_t from) {
        for (std::size_t i = from; i < assigned.size(); ++i) {
            int x = assigned[i];
            for (std::size_t j = 0; j < assigned.size(); ++j) {
                int y = assigned[j];
                if (!force(b1.add(x, y), b2.add(f[x], f[y])) ||
                    !force(b1.mul(x, y), b2.mul(f[x], f[y])) ||
                    !force(b1.mul(y, x), b2.mul(f[y], f[x])))
                    return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (assigned.size() > mark) {
            int x = assigned.back();
            assigned.pop_back();
            finv[f[x]] = -1;
            f[x] = -1;
        }
    }

    bool search() {
        int x = -1;
        for (int i = 0; i < b1.size(); ++i)
            if (f[i] == -1) {
                x = i;
                break;
            }
        if (x == -1)
            return true;
        for (int y = 0; y < b2.size(); ++y) {
            if (finv[y] != -1 || sig2[y] != sig1[x])
                continue;
            std::size_t mark = assigned.size();
            if (force(x, y) && close(mark) && search())
                return true;
            undo(mark);
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> find_brace_isomorphism(const FiniteBrace& b1,
                                                       const FiniteBrace& b2) {
    if (b1.size() != b2.size())
        return std::nullopt;
    int m = b1.size();
    auto k1 = element_keys(b1);
    auto k2 = element_keys(b2);
    std::map<ElemKey, std::int64_t> key_of;
    for (const auto& k : k1)
        key_of.emplace(k, 0);
    for (const auto& k : k2)
        key_of.emplace(k, 0);
    std::int64_t next = 0;
    for (auto& [k, v] : key_of)
        v = next++;

    BraceIso iso{b1,     b2, {}, {}, std::vector<int>(m, -1),
                 std::vector<int>(m, -1), {}};
    iso.sig1.resize(m);
    iso.sig2.resize(m);
    std::vector<std::int64_t> c1(next, 0), c2(next, 0);
    for (int x = 0; x < m; ++x) {
        iso.sig1[x] = key_of[k1[x]];
        iso.sig2[x] = key_of[k2[x]];
        ++c1[iso.sig1[x]];
        ++c2[iso.sig2[x]];
    }
    if (c1 != c2)
        return std::nullopt;

    if (!iso.force(b1.zero(), b2.zero()) || !iso.close(0))
        return std::nullopt;
    if (!iso.search())
        return std::nullopt;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (iso.f[b1.add(x, y)] != b2.add(iso.f[x], iso.f[y]) ||
                iso.f[b1.mul(x, y)] != b2.mul(iso.f[x], iso.f[y]))
                throw CheckError("brace isomorphism search produced an invalid map");
    return iso.f;
}

// --------------------------------------------------------- induced solutions

Solution restricted_solution(const FiniteBrace& b, std::span<const int> points) {
    int n = static_cast<int>(points.size());
    std::vector<int> pos(b.size(), -1);
    for (int i = 0; i < n; ++i) {
        if (points[i] < 0 || points[i] >= b.size())
            throw CheckError("restricted point out of range");
        if (pos[points[i]] != -1)
            throw CheckError("restricted point list has duplicates");
        pos[points[i]] = i;
    }
    std::vector<std::vector<int>> sigma(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = b.labels()[points[i]];
        for (int j = 0; j < n; ++j) {
            int img = b.lambda(points[i], points[j]);
            if (pos[img] == -1)
                throw CheckError("subset is not closed under the lambda action: " +
                                 elem_name(b.labels(), points[i]) + " maps " +
                                 elem_name(b.labels(), points[j]) + " outside");
            sigma[i][j] = pos[img];
        }
    }
    return Solution::make(sigma, std::move(labels));
}

} // namespace ybx
