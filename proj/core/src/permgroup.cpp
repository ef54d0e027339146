#include "ybx/permgroup.hpp"

#include <algorithm>
#include <sstream>

namespace ybx {

std::uint64_t PermGroup::hash_perm(std::span<const int> p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : p) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

void PermGroup::index_insert(int e) {
    std::size_t mask = table_.size() - 1;
    std::size_t slot = hash_perm(perm(e)) & mask;
    while (table_[slot] != -1)
        slot = (slot + 1) & mask;
    table_[slot] = e;
}

int PermGroup::find(std::span<const int> p) const {
    std::size_t mask = table_.size() - 1;
    std::size_t slot = hash_perm(p) & mask;
    while (table_[slot] != -1) {
        int e = table_[slot];
        if (std::equal(p.begin(), p.end(), perm(e).begin()))
            return e;
        slot = (slot + 1) & mask;
    }
    return -1;
}

int PermGroup::compose(int a, int b) const {
    std::vector<int> q(degree_);
    auto pa = perm(a);
    auto pb = perm(b);
    for (int x = 0; x < degree_; ++x)
        q[x] = pa[pb[x]];
    int e = find(q);
    if (e < 0)
        throw CheckError("permutation group closure is missing a product"); // bug
    return e;
}

int PermGroup::inverse(int e) const {
    std::vector<int> q(degree_);
    auto p = perm(e);
    for (int x = 0; x < degree_; ++x)
        q[p[x]] = x;
    int r = find(q);
    if (r < 0)
        throw CheckError("permutation group closure is missing an inverse"); // bug
    return r;
}

std::string PermGroup::cycle_label(int e) const {
    auto p = perm(e);
    std::vector<std::uint8_t> seen(degree_, 0);
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < degree_; ++i) {
        if (seen[i] || p[i] == i)
            continue;
        any = true;
        os << '(';
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            os << (first ? "" : " ") << j;
            first = false;
            j = p[j];
        }
        os << ')';
    }
    if (!any)
        return "()";
    return os.str();
}

PermGroup permutation_group(const Solution& s, std::int64_t cap) {
    int n = s.size();
    PermGroup g;
    g.degree_ = n;
    g.table_.assign(256, -1);

    auto push = [&](std::vector<int> p, PermGroup::Word w) {
        int e = static_cast<int>(g.size());
        if (e >= cap)
            throw CapError("permutation group exceeds cap " + std::to_string(cap));
        g.elems_.insert(g.elems_.end(), p.begin(), p.end());
        g.words_.push_back(w);
        // rehash at half load
        if (static_cast<std::size_t>(g.size()) * 2 >= g.table_.size()) {
            g.table_.assign(g.table_.size() * 2, -1);
            for (int i = 0; i < e; ++i)
                g.index_insert(i);
        }
        g.index_insert(e);
        return e;
    };

    std::vector<int> idperm(n);
    for (int i = 0; i < n; ++i)
        idperm[i] = i;
    push(idperm, {-1, -1});

    // Distinct generators, each attributed to its first point.
    std::vector<int> gen_points;
    for (int x = 0; x < n; ++x) {
        std::vector<int> row(s.sigma_row(x).begin(), s.sigma_row(x).end());
        if (g.find(row) == -1) {
            push(row, {0, x});
            gen_points.push_back(x);
        }
    }

    std::vector<int> q(n);
    for (int e = 0; e < g.size(); ++e) { // g grows while iterating (BFS order)
        auto pe = g.perm(e);
        std::vector<int> pe_copy(pe.begin(), pe.end());
        for (int x : gen_points) {
            for (int y = 0; y < n; ++y)
                q[y] = pe_copy[s.sigma(x, y)];
            if (g.find(q) == -1)
                push(q, {e, x});
        }
    }

    g.sigma_elem_.resize(n);
    for (int x = 0; x < n; ++x) {
        std::vector<int> row(s.sigma_row(x).begin(), s.sigma_row(x).end());
        g.sigma_elem_[x] = g.find(row);
    }
    return g;
}

} // namespace ybx
