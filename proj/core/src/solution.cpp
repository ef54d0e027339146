#include "ybx/solution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace ybx {

namespace {

std::string point_name(const std::vector<std::string>& labels, int x) {
    if (x < static_cast<int>(labels.size()) && !labels[x].empty())
        return labels[x];
    return std::to_string(x);
}

} // namespace

Solution Solution::make(const std::vector<std::vector<int>>& sigma,
                        std::vector<std::string> labels) {
    int n = static_cast<int>(sigma.size());
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(sigma[x].size()) != n)
            throw CheckError("sigma table is not square: row " + std::to_string(x) +
                             " has length " + std::to_string(sigma[x].size()));
        flat.insert(flat.end(), sigma[x].begin(), sigma[x].end());
    }
    return make_flat(n, std::move(flat), std::move(labels));
}

Solution Solution::make_flat(int n, std::vector<int> sigma,
                             std::vector<std::string> labels) {
    if (n <= 0)
        throw CheckError("solution must have at least one point");
    if (static_cast<std::size_t>(n) * n != sigma.size())
        throw CheckError("sigma table size mismatch");
    if (labels.empty()) {
        labels.resize(n);
        for (int i = 0; i < n; ++i)
            labels[i] = std::to_string(i);
    }
    if (static_cast<int>(labels.size()) != n)
        throw CheckError("label list size mismatch");

    Solution s;
    s.n_ = n;
    s.sigma_ = std::move(sigma);
    s.labels_ = std::move(labels);

    // Rows are permutations.
    s.sigma_inv_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            int v = s.sigma(x, y);
            if (v < 0 || v >= n)
                throw CheckError("sigma entry out of range at (" +
                                 point_name(s.labels_, x) + "," +
                                 point_name(s.labels_, y) + ")");
            if (s.sigma_inv_[static_cast<std::size_t>(x) * n + v] != -1)
                throw CheckError("sigma row " + point_name(s.labels_, x) +
                                 " is not a permutation: value " +
                                 point_name(s.labels_, v) + " repeats");
            s.sigma_inv_[static_cast<std::size_t>(x) * n + v] = y;
        }
    }

    // gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x); every gamma row must be a
    // permutation (non-degeneracy).
    s.gamma_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int y = 0; y < n; ++y) {
        std::vector<std::uint8_t> seen(n, 0);
        for (int x = 0; x < n; ++x) {
            int g = s.sigma_inv(s.sigma(x, y), x);
            s.gamma_[static_cast<std::size_t>(y) * n + x] = g;
            if (seen[g])
                throw CheckError("non-degeneracy fails: gamma row " +
                                 point_name(s.labels_, y) + " repeats value " +
                                 point_name(s.labels_, g));
            seen[g] = 1;
        }
    }

    // Involutivity: r(r(x,y)) = (x,y).
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            auto [u, v] = s.apply_r(x, y);
            auto [x2, y2] = s.apply_r(u, v);
            if (x2 != x || y2 != y)
                throw CheckError("involutivity fails at (" + point_name(s.labels_, x) +
                                 "," + point_name(s.labels_, y) + ")");
        }

    // Braid relation on all triples.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            auto [a1, b1] = s.apply_r(x, y); // r12 on (x,y,z) leaves z alone
            for (int z = 0; z < n; ++z) {
                // lhs: r12 r23 r12
                auto [b2, c2] = s.apply_r(b1, z);
                auto [a3, b3] = s.apply_r(a1, b2);
                // rhs: r23 r12 r23
                auto [b4, c4] = s.apply_r(y, z);
                auto [a5, b5] = s.apply_r(x, b4);
                auto [b6, c6] = s.apply_r(b5, c4);
                if (a3 != a5 || b3 != b6 || c2 != c6)
                    throw CheckError("braid relation fails at triple (" +
                                     point_name(s.labels_, x) + "," +
                                     point_name(s.labels_, y) + "," +
                                     point_name(s.labels_, z) + ")");
            }
        }
    return s;
}

bool Solution::sigma_rows_equal(int x, int y) const {
    return std::equal(sigma_.begin() + static_cast<std::size_t>(x) * n_,
                      sigma_.begin() + static_cast<std::size_t>(x + 1) * n_,
                      sigma_.begin() + static_cast<std::size_t>(y) * n_);
}

bool verify_sigma_condition(const Solution& s) {
    int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xs = s.sigma_inv(x, y); // sigma_x^{-1}(y)
            int ys = s.sigma_inv(y, x);
            for (int z = 0; z < n; ++z)
                if (s.sigma(x, s.sigma(xs, z)) != s.sigma(y, s.sigma(ys, z)))
                    return false;
        }
    return true;
}

OrbitInfo solution_orbits(const Solution& s) {
    int n = s.size();
    OrbitInfo info;
    info.orbit_of.assign(n, -1);
    // Distinct generator rows suffice for reachability.
    std::vector<int> gens;
    for (int x = 0; x < n; ++x) {
        bool dup = false;
        for (int g : gens)
            if (s.sigma_rows_equal(g, x)) {
                dup = true;
                break;
            }
        if (!dup)
            gens.push_back(x);
    }
    for (int start = 0; start < n; ++start) {
        if (info.orbit_of[start] != -1)
            continue;
        int id = static_cast<int>(info.orbits.size());
        std::vector<int> orbit;
        std::vector<int> work{start};
        info.orbit_of[start] = id;
        orbit.push_back(start);
        while (!work.empty()) {
            int p = work.back();
            work.pop_back();
            for (int g : gens) {
                int q = s.sigma(g, p);
                if (info.orbit_of[q] == -1) {
                    info.orbit_of[q] = id;
                    orbit.push_back(q);
                    work.push_back(q);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        info.orbits.push_back(std::move(orbit));
    }
    info.transitive = info.orbits.size() == 1;
    return info;
}

bool is_indecomposable(const Solution& s) { return solution_orbits(s).transitive; }

RetractResult retract(const Solution& s) {
    int n = s.size();
    std::vector<int> cls(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (s.sigma_rows_equal(reps[r], x)) {
                cls[x] = static_cast<int>(r);
                break;
            }
        if (cls[x] == -1) {
            cls[x] = static_cast<int>(reps.size());
            reps.push_back(x);
        }
    }
    int m = static_cast<int>(reps.size());
    std::vector<std::vector<int>> q(m, std::vector<int>(m, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int v = cls[s.sigma(x, y)];
            int& cell = q[cls[x]][cls[y]];
            if (cell == -1)
                cell = v;
            else if (cell != v)
                throw CheckError("retract table ill-defined at class pair (" +
                                 std::to_string(cls[x]) + "," + std::to_string(cls[y]) +
                                 ")");
        }
    std::vector<std::string> labels(m);
    for (int r = 0; r < m; ++r) {
        std::string l = "{";
        bool first = true;
        for (int x = 0; x < n; ++x)
            if (cls[x] == r) {
                if (!first)
                    l += ' ';
                first = false;
                l += s.labels()[x];
            }
        l += '}';
        labels[r] = std::move(l);
    }
    return {Solution::make(q, std::move(labels)), std::move(cls)};
}

bool is_irretractable(const Solution& s) {
    int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (s.sigma_rows_equal(x, y))
                return false;
    return true;
}

std::optional<int> multipermutation_level(const Solution& s) {
    if (s.size() == 1)
        return 0;
    Solution cur = s;
    int level = 0;
    while (true) {
        RetractResult r = retract(cur);
        ++level;
        if (r.solution.size() == 1)
            return level;
        if (r.solution.size() == cur.size())
            return std::nullopt;
        cur = std::move(r.solution);
    }
}

// ---------------------------------------------------------------- Congruence

Congruence Congruence::discrete(int n) {
    Congruence c;
    c.block_of_.resize(n);
    std::iota(c.block_of_.begin(), c.block_of_.end(), 0);
    c.blocks_.resize(n);
    for (int i = 0; i < n; ++i)
        c.blocks_[i] = {i};
    return c;
}

Congruence Congruence::from_parents(std::span<const int> parent) {
    int n = static_cast<int>(parent.size());
    std::vector<int> root(n);
    for (int i = 0; i < n; ++i) {
        int r = i;
        while (parent[r] != r)
            r = parent[r];
        root[i] = r;
    }
    Congruence c;
    c.block_of_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (c.block_of_[root[i]] == -1) {
            c.block_of_[root[i]] = static_cast<int>(c.blocks_.size());
            c.blocks_.emplace_back();
        }
        int b = c.block_of_[root[i]];
        c.block_of_[i] = b;
        c.blocks_[b].push_back(i);
    }
    return c;
}

void CongruenceCloser::reset(int n) {
    n_ = n;
    blocks_ = n;
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    rank_.assign(n, 0);
    work_.clear();
}

int CongruenceCloser::find(int x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void CongruenceCloser::unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb)
        return;
    if (rank_[ra] < rank_[rb])
        std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb])
        ++rank_[ra];
    --blocks_;
    work_.emplace_back(a, b);
}

void CongruenceCloser::seed(int a, int b) { unite(a, b); }

int CongruenceCloser::close(std::span<const int> sigma_flat, bool early_full_exit) {
    // Merged points u ~ v force sigma_u(y) ~ sigma_v(y) and
    // sigma_x(u) ~ sigma_x(v); transitivity lifts this to the two-sided rule.
    while (!work_.empty()) {
        if (early_full_exit && blocks_ == 1)
            break;
        auto [u, v] = work_.back();
        work_.pop_back();
        const int* ru = sigma_flat.data() + static_cast<std::size_t>(u) * n_;
        const int* rv = sigma_flat.data() + static_cast<std::size_t>(v) * n_;
        for (int y = 0; y < n_; ++y)
            unite(ru[y], rv[y]);
        for (int x = 0; x < n_; ++x) {
            const int* rx = sigma_flat.data() + static_cast<std::size_t>(x) * n_;
            unite(rx[u], rx[v]);
        }
    }
    return blocks_;
}

Congruence congruence_generated(const Solution& s,
                                std::span<const std::pair<int, int>> pairs) {
    for (auto [a, b] : pairs)
        if (a < 0 || b < 0 || a >= s.size() || b >= s.size())
            throw CheckError("congruence seed pair out of range");
    CongruenceCloser closer;
    closer.reset(s.size());
    for (auto [a, b] : pairs)
        closer.seed(a, b);
    closer.close(s.sigma_flat(), false);
    return Congruence::from_parents(closer.parents());
}

QuotientSolutionResult quotient_solution(const Solution& s, const Congruence& c) {
    if (c.size() != s.size())
        throw CheckError("congruence size mismatch");
    int m = c.block_count();
    std::vector<std::vector<int>> q(m, std::vector<int>(m, -1));
    for (int x = 0; x < s.size(); ++x)
        for (int y = 0; y < s.size(); ++y) {
            int bx = c.block_of(x), by = c.block_of(y);
            int v = c.block_of(s.sigma(x, y));
            int& cell = q[bx][by];
            if (cell == -1)
                cell = v;
            else if (cell != v)
                throw CheckError("partition is not compatible: blocks (" +
                                 std::to_string(bx) + "," + std::to_string(by) +
                                 ") have inconsistent images");
        }
    std::vector<std::string> labels(m);
    for (int b = 0; b < m; ++b) {
        std::string l = "{";
        for (std::size_t i = 0; i < c.blocks()[b].size(); ++i)
            l += (i ? " " : "") + s.labels()[c.blocks()[b][i]];
        l += '}';
        labels[b] = std::move(l);
    }
    std::vector<int> proj(s.size());
    for (int x = 0; x < s.size(); ++x)
        proj[x] = c.block_of(x);
    return {Solution::make(q, std::move(labels)), std::move(proj)};
}

SimplicityResult is_simple_solution(const Solution& s) {
    if (s.size() <= 1)
        throw CheckError("simplicity is defined for solutions with more than one point");
    CongruenceCloser closer;
    for (int x = 0; x < s.size(); ++x)
        for (int y = x + 1; y < s.size(); ++y) {
            closer.reset(s.size());
            closer.seed(x, y);
            // early exit is sound: one block can only stay one block, and a
            // non-full closure runs to completion, so the witness is exact
            if (closer.close(s.sigma_flat(), true) > 1)
                return {false, Congruence::from_parents(closer.parents())};
        }
    return {true, std::nullopt};
}

// ------------------------------------------------------- isomorphism search

namespace {

std::vector<int> cycle_type(std::span<const int> perm) {
    int n = static_cast<int>(perm.size());
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<int> type;
    for (int i = 0; i < n; ++i) {
        if (seen[i])
            continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = perm[j];
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
}

struct IsoSearch {
    const Solution& s1;
    const Solution& s2;
    int n;
    std::vector<int> sig1, sig2; // signature class per point
    std::vector<int> f, finv;

    bool force(int x, int y, std::vector<std::pair<int, int>>& trail) {
        if (f[x] == y)
            return true;
        if (f[x] != -1 || finv[y] != -1)
            return false;
        if (sig1[x] != sig2[y])
            return false;
        f[x] = y;
        finv[y] = x;
        trail.emplace_back(x, y);
        return true;
    }

    // Propagate f(sigma_x(y)) = sigma'_{f(x)}(f(y)) from the newly assigned
    // points; returns false on contradiction.
    bool propagate(std::size_t from, std::vector<std::pair<int, int>>& trail) {
        for (std::size_t i = from; i < trail.size(); ++i) {
            int x = trail[i].first;
            for (int z = 0; z < n; ++z) {
                if (f[z] == -1)
                    continue;
                if (!force(s1.sigma(x, z), s2.sigma(f[x], f[z]), trail))
                    return false;
                if (!force(s1.sigma(z, x), s2.sigma(f[z], f[x]), trail))
                    return false;
            }
        }
        return true;
    }

    void undo(std::vector<std::pair<int, int>>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            auto [x, y] = trail.back();
            trail.pop_back();
            f[x] = -1;
            finv[y] = -1;
        }
    }

    bool search(std::vector<std::pair<int, int>>& trail) {
        int x = -1;
        for (int i = 0; i < n; ++i)
            if (f[i] == -1) {
                x = i;
                break;
            }
        if (x == -1)
            return true;
        for (int y = 0; y < n; ++y) {
            if (finv[y] != -1 || sig2[y] != sig1[x])
                continue;
            std::size_t mark = trail.size();
            if (force(x, y, trail) && propagate(mark, trail) && search(trail))
                return true;
            undo(trail, mark);
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> find_solution_isomorphism(const Solution& s1,
                                                          const Solution& s2) {
    if (s1.size() != s2.size())
        return std::nullopt;
    int n = s1.size();

    // Signature: cycle types of the point's sigma row and gamma row plus a
    // diagonal fixedness bit; isomorphisms preserve all of these.
    auto signatures = [&](const Solution& s) {
        std::vector<std::vector<int>> raw(n);
        for (int x = 0; x < n; ++x) {
            auto t1 = cycle_type(s.sigma_row(x));
            std::vector<int> grow(n);
            for (int y = 0; y < n; ++y)
                grow[y] = s.gamma(x, y);
            auto t2 = cycle_type(grow);
            raw[x] = t1;
            raw[x].push_back(-1);
            raw[x].insert(raw[x].end(), t2.begin(), t2.end());
            raw[x].push_back(s.sigma(x, x) == x ? 1 : 0);
        }
        return raw;
    };
    auto raw1 = signatures(s1);
    auto raw2 = signatures(s2);
    std::map<std::vector<int>, int> classes;
    for (const auto& r : raw1)
        classes.emplace(r, 0);
    for (const auto& r : raw2)
        classes.emplace(r, 0);
    int next = 0;
    for (auto& [k, v] : classes)
        v = next++;
    IsoSearch search{s1, s2, n, {}, {}, std::vector<int>(n, -1),
                     std::vector<int>(n, -1)};
    search.sig1.resize(n);
    search.sig2.resize(n);
    std::vector<int> count1(next, 0), count2(next, 0);
    for (int i = 0; i < n; ++i) {
        search.sig1[i] = classes[raw1[i]];
        search.sig2[i] = classes[raw2[i]];
        ++count1[search.sig1[i]];
        ++count2[search.sig2[i]];
    }
    if (count1 != count2)
        return std::nullopt;

    std::vector<std::pair<int, int>> trail;
    if (!search.search(trail))
        return std::nullopt;
    // Final full check.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (search.f[s1.sigma(x, y)] != s2.sigma(search.f[x], search.f[y]))
                throw CheckError("isomorphism search produced an invalid map");
    return search.f;
}

} // namespace ybx
