#include "ybx/probe.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "ybx/constructions.hpp"
#include "ybx/solution.hpp"

namespace ybx {

namespace {

// Flat tables for one (A, twist); everything the per-family loops touch.
struct ProbeCtx {
    int na = 0;
    int ord = 0;
    std::vector<int> add;        // na x na
    std::vector<int> neg;        // na
    std::vector<std::vector<int>> tpow; // ord perms of A
    struct Orbit {
        int rep;
        std::vector<std::pair<int, int>> fill; // (element, power)
        std::vector<int> choices;
    };
    std::vector<Orbit> orbits;
    std::vector<std::vector<int>> commuting;     // perms of A commuting with twist
    std::vector<std::vector<int>> commuting_inv;
    std::int64_t total = 0; // family count

    int gadd(int x, int y) const { return add[x * na + y]; }
    int gsub(int x, int y) const { return add[x * na + neg[y]]; }
};

ProbeCtx build_ctx(const FinAbGroup& a, const GroupAut& t) {
    ProbeCtx c;
    c.na = static_cast<int>(a.order());
    c.ord = t.order();
    c.add.resize(c.na * c.na);
    c.neg.resize(c.na);
    for (int x = 0; x < c.na; ++x) {
        c.neg[x] = a.neg(x);
        for (int y = 0; y < c.na; ++y)
            c.add[x * c.na + y] = a.add(x, y);
    }
    c.tpow.resize(c.ord);
    {
        GroupAut cur = GroupAut::identity(a);
        for (int s = 0; s < c.ord; ++s) {
            c.tpow[s] = cur.perm();
            cur = cur.compose(t);
        }
    }
    std::vector<std::uint8_t> seen(c.na, 0);
    seen[0] = 1;
    for (int rep = 0; rep < c.na; ++rep) {
        if (seen[rep])
            continue;
        ProbeCtx::Orbit o;
        o.rep = rep;
        std::vector<int> stab;
        for (int s = 0; s < c.ord; ++s) {
            int x = c.tpow[s][rep];
            if (x == rep || c.neg[x] == rep)
                stab.push_back(s);
            if (!seen[x]) {
                seen[x] = 1;
                o.fill.emplace_back(x, s);
            }
            if (!seen[c.neg[x]]) {
                seen[c.neg[x]] = 1;
                o.fill.emplace_back(c.neg[x], s);
            }
        }
        for (int v = 0; v < c.na; ++v) {
            bool ok = true;
            for (int s : stab)
                if (c.tpow[s][v] != v) {
                    ok = false;
                    break;
                }
            if (ok)
                o.choices.push_back(v);
        }
        c.orbits.push_back(std::move(o));
    }
    c.total = c.na;
    for (const auto& o : c.orbits) {
        c.total *= static_cast<std::int64_t>(o.choices.size());
        if (c.total > (std::int64_t{1} << 40))
            throw CapError("family space too large to enumerate");
    }
    for (const auto& phi : all_automorphisms(a)) {
        if (phi.compose(t) != t.compose(phi))
            continue;
        if (phi.is_identity())
            continue; // identity transform seeds the canonical search
        c.commuting.push_back(phi.perm());
        c.commuting_inv.push_back(phi.inverse().perm());
    }
    return c;
}

// Family id -> coefficient table, via the mixed-radix odometer
// (j0 fastest digit, then one digit per orbit).
struct FamilyIter {
    const ProbeCtx& c;
    std::int64_t id;
    int j0 = 0;
    std::vector<std::size_t> digit;

    FamilyIter(const ProbeCtx& ctx, std::int64_t start) : c(ctx), id(start) {
        std::int64_t rest = start;
        j0 = static_cast<int>(rest % c.na);
        rest /= c.na;
        digit.resize(c.orbits.size());
        for (std::size_t i = 0; i < c.orbits.size(); ++i) {
            digit[i] = static_cast<std::size_t>(
                rest % static_cast<std::int64_t>(c.orbits[i].choices.size()));
            rest /= static_cast<std::int64_t>(c.orbits[i].choices.size());
        }
    }

    void fill(std::vector<int>& j) const {
        j[0] = j0; // zero element has index 0
        for (std::size_t i = 0; i < c.orbits.size(); ++i) {
            int v = c.orbits[i].choices[digit[i]];
            for (auto [x, s] : c.orbits[i].fill)
                j[x] = c.gadd(j0, c.tpow[s][v]);
        }
    }

    void advance() {
        ++id;
        if (++j0 < c.na)
            return;
        j0 = 0;
        for (std::size_t i = 0; i < c.orbits.size(); ++i) {
            if (++digit[i] < c.orbits[i].choices.size())
                return;
            digit[i] = 0;
        }
    }
};

std::uint64_t pack_key(const std::vector<int>& j) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < j.size(); ++i)
        k |= static_cast<std::uint64_t>(j[i]) << (4 * i);
    return k;
}

void unpack_key(std::uint64_t k, int na, std::vector<int>& j) {
    j.resize(na);
    for (int i = 0; i < na; ++i)
        j[i] = static_cast<int>((k >> (4 * i)) & 0xf);
}

// Lexicographically least conjugate of the family under the commuting
// automorphisms.
std::uint64_t canonical_key(const ProbeCtx& c, const std::vector<int>& j,
                            std::vector<int>& best) {
    best.assign(j.begin(), j.end());
    for (std::size_t pi = 0; pi < c.commuting.size(); ++pi) {
        const auto& phi = c.commuting[pi];
        const auto& inv = c.commuting_inv[pi];
        for (int x = 0; x < c.na; ++x) {
            int v = phi[j[inv[x]]];
            if (v > best[x])
                break;
            if (v < best[x]) {
                best[x] = v;
                for (int y = x + 1; y < c.na; ++y)
                    best[y] = phi[j[inv[y]]];
                break;
            }
        }
    }
    return pack_key(best);
}

// Per-family validity: symmetry and twist equivariance. Families come out
// of the odometer valid by construction; this is the independent check.
bool family_valid(const ProbeCtx& c, const std::vector<int>& j) {
    for (int x = 0; x < c.na; ++x)
        if (j[x] != j[c.neg[x]])
            return false;
    for (int s = 0; s < c.ord; ++s)
        for (int x = 0; x < c.na; ++x)
            if (c.gsub(j[c.tpow[s][x]], j[0]) != c.tpow[s][c.gsub(j[x], j[0])])
                return false;
    return true;
}

struct ClassVerdict {
    bool sep_full = false;
    bool simple = false;
};

// Separator condition: for every nonzero a, the fixpoint of
//   V <- V + <j_c - j_{c+v} : v in V>,  V_1 = <j_c - j_{c + t^s(a)}>
// is the whole group. Subgroups of A are bit masks here (|A| <= 9).
bool separators_full(const ProbeCtx& c, const std::vector<int>& j) {
    const std::uint32_t full = (1u << c.na) - 1;
    std::vector<int> members;
    for (int a = 1; a < c.na; ++a) {
        std::uint32_t v = 1u; // contains 0
        members.assign(1, 0);
        auto close_with = [&](int g) {
            if (v & (1u << g))
                return;
            // add the subgroup generated by existing members and g
            std::vector<int> work{g};
            v |= 1u << g;
            members.push_back(g);
            while (!work.empty()) {
                int x = work.back();
                work.pop_back();
                for (std::size_t i = 0; i < members.size(); ++i) {
                    int y = c.gadd(x, members[i]);
                    if (!(v & (1u << y))) {
                        v |= 1u << y;
                        members.push_back(y);
                        work.push_back(y);
                    }
                }
            }
        };
        for (int s = 0; s < c.ord; ++s) {
            int shift = c.tpow[s][a];
            for (int x = 0; x < c.na; ++x)
                close_with(c.gsub(j[x], j[c.gadd(x, shift)]));
        }
        while (v != full) {
            std::uint32_t before = v;
            std::vector<int> snapshot(members);
            for (int m : snapshot) {
                if (m == 0)
                    continue;
                for (int x = 0; x < c.na; ++x)
                    close_with(c.gsub(j[x], j[c.gadd(x, m)]));
            }
            if (v == before)
                break;
        }
        if (v != full)
            return false;
    }
    return true;
}

ClassVerdict class_verdict(const ProbeCtx& c, const std::vector<int>& j,
                           std::vector<int>& sigma, CongruenceCloser& closer) {
    ClassVerdict out;
    out.sep_full = separators_full(c, j);

    const int na = c.na;
    const int n = na * na;
    const auto& tp = c.tpow[1 % c.ord]; // the twist itself
    sigma.resize(static_cast<std::size_t>(n) * n);
    for (int a1 = 0; a1 < na; ++a1)
        for (int a2 = 0; a2 < na; ++a2) {
            int p = a1 * na + a2;
            int* row = sigma.data() + static_cast<std::size_t>(p) * n;
            for (int c1 = 0; c1 < na; ++c1) {
                int u = c.gadd(tp[c1], a2);
                int d = j[c.gsub(u, a1)];
                int base = u * na;
                for (int c2 = 0; c2 < na; ++c2)
                    row[c1 * na + c2] = base + tp[c.gsub(c2, d)];
            }
        }

    // Retractability: the coefficient criterion, cross-checked against the
    // actual rows (hashed, then compared on hash collision).
    bool retractable = false;
    for (int a = 1; a < na && !retractable; ++a) {
        bool period = true;
        for (int x = 0; x < na; ++x)
            if (j[c.gadd(x, a)] != j[x]) {
                period = false;
                break;
            }
        retractable = period;
    }
    {
        std::vector<std::uint64_t> rh(n);
        for (int p = 0; p < n; ++p) {
            std::uint64_t h = 1469598103934665603ull;
            const int* row = sigma.data() + static_cast<std::size_t>(p) * n;
            for (int y = 0; y < n; ++y) {
                h ^= static_cast<std::uint64_t>(row[y]);
                h *= 1099511628211ull;
            }
            rh[p] = h;
        }
        bool any_collision = false;
        for (int p = 0; p < n && !any_collision; ++p)
            for (int q = p + 1; q < n && !any_collision; ++q)
                any_collision =
                    rh[p] == rh[q] &&
                    std::equal(sigma.begin() + static_cast<std::size_t>(p) * n,
                               sigma.begin() + static_cast<std::size_t>(p + 1) * n,
                               sigma.begin() + static_cast<std::size_t>(q) * n);
        if (retractable != any_collision)
            throw CheckError("retractability criterion disagrees with the rows");
        retractable = any_collision;
    }
    if (retractable) {
        out.simple = false; // witnessed by the retract partition
        return out;
    }

    // Orbit of point 0; intransitivity is witnessed by the orbit partition.
    {
        std::vector<std::uint8_t> in(n, 0);
        std::vector<int> work{0};
        in[0] = 1;
        int count = 1;
        while (!work.empty()) {
            int p = work.back();
            work.pop_back();
            for (int g = 0; g < n; ++g) {
                int q = sigma[static_cast<std::size_t>(g) * n + p];
                if (!in[q]) {
                    in[q] = 1;
                    ++count;
                    work.push_back(q);
                }
            }
        }
        if (count < 2)
            throw CheckError("orbit of the base point is unexpectedly trivial");
        if (count != n) {
            out.simple = false;
            return out;
        }
    }

    // Transitive and irretractable: principal congruences from the base
    // point cover every pair class.
    out.simple = true;
    for (int y = 1; y < n; ++y) {
        closer.reset(n);
        closer.seed(0, y);
        if (closer.close(sigma, true) > 1) {
            out.simple = false;
            break;
        }
    }
    return out;
}

std::string family_text(const FinAbGroup& a, const std::vector<int>& j) {
    std::ostringstream os;
    for (int x = 0; x < static_cast<int>(j.size()); ++x)
        os << (x ? "," : "") << a.label(x) << "->" << a.label(j[x]);
    return os.str();
}

} // namespace

ProbeReport probe_converse(const FinAbGroup& a, const GroupAut& twist,
                           const ProbeOptions& opts) {
    if (a.order() > opts.max_order)
        throw CapError("probe limited to groups of order <= " +
                       std::to_string(opts.max_order));
    if (a.order() < 2)
        throw CheckError("probe needs a nontrivial group");
    if (twist.group() != a)
        throw CheckError("twist acts on a different group");

    ProbeCtx ctx = build_ctx(a, twist);

    int threads = opts.threads > 0
                      ? opts.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;
    if (static_cast<std::int64_t>(threads) > ctx.total)
        threads = static_cast<int>(ctx.total);

    // Pass 1: canonical class sizes.
    std::vector<std::unordered_map<std::uint64_t, std::int64_t>> maps(threads);
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::thread> pool;
        for (int ti = 0; ti < threads; ++ti)
            pool.emplace_back([&, ti] {
                try {
                    std::int64_t lo = ctx.total * ti / threads;
                    std::int64_t hi = ctx.total * (ti + 1) / threads;
                    FamilyIter it(ctx, lo);
                    std::vector<int> j(ctx.na), best(ctx.na);
                    auto& map = maps[ti];
                    for (std::int64_t id = lo; id < hi; ++id, it.advance()) {
                        it.fill(j);
                        if (!family_valid(ctx, j))
                            throw CheckError("enumerated family failed validation");
                        ++map[canonical_key(ctx, j, best)];
                    }
                } catch (...) {
                    errors[ti] = std::current_exception();
                }
            });
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    std::unordered_map<std::uint64_t, std::int64_t> classes;
    for (auto& m : maps)
        for (auto [k, v] : m)
            classes[k] += v;

    std::vector<std::uint64_t> keys;
    keys.reserve(classes.size());
    std::int64_t family_check = 0;
    for (auto [k, v] : classes) {
        keys.push_back(k);
        family_check += v;
    }
    if (family_check != ctx.total)
        throw CheckError("class sizes do not add up to the family count");
    std::sort(keys.begin(), keys.end());

    // Pass 2: one verdict per class.
    std::vector<ClassVerdict> verdicts(keys.size());
    {
        std::vector<std::thread> pool;
        std::size_t nk = keys.size();
        std::fill(errors.begin(), errors.end(), nullptr);
        for (int ti = 0; ti < threads; ++ti)
            pool.emplace_back([&, ti] {
                try {
                    std::vector<int> j, sigma;
                    CongruenceCloser closer;
                    for (std::size_t i = ti; i < nk;
                         i += static_cast<std::size_t>(threads)) {
                        unpack_key(keys[i], ctx.na, j);
                        verdicts[i] = class_verdict(ctx, j, sigma, closer);
                    }
                } catch (...) {
                    errors[ti] = std::current_exception();
                }
            });
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    ProbeReport rep;
    rep.group = a.descriptor();
    {
        std::ostringstream os;
        os << '[';
        for (int i = 0; i < a.rank(); ++i) {
            os << (i ? ",[" : "[");
            for (int k = 0; k < a.rank(); ++k)
                os << (k ? "," : "") << twist.matrix()[i][k];
            os << ']';
        }
        os << ']';
        rep.aut = os.str();
    }
    rep.twist_order = ctx.ord;
    rep.families_total = ctx.total;
    rep.iso_classes = static_cast<std::int64_t>(keys.size());
    std::vector<int> j;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::int64_t count = classes[keys[i]];
        const ClassVerdict& v = verdicts[i];
        if (v.sep_full && v.simple)
            rep.sep_full_simple += count;
        else if (v.sep_full && !v.simple) {
            rep.sep_full_not_simple += count;
            if (static_cast<int>(rep.counterexamples.size()) < opts.sample_limit) {
                unpack_key(keys[i], ctx.na, j);
                rep.counterexamples.push_back(family_text(a, j));
            }
        } else if (!v.sep_full && v.simple) {
            rep.sep_partial_simple += count;
            if (static_cast<int>(rep.violations.size()) < opts.sample_limit) {
                unpack_key(keys[i], ctx.na, j);
                rep.violations.push_back(family_text(a, j));
            }
        } else {
            rep.sep_partial_not_simple += count;
        }
    }
    return rep;
}

} // namespace ybx
