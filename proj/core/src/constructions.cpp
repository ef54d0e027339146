#include "ybx/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ybx {

// ------------------------------------------------------------------- JFamily

JFamily JFamily::make(const FinAbGroup& a, const GroupAut& t, std::vector<int> j) {
    if (t.group() != a)
        throw CheckError("twist acts on a different group");
    if (static_cast<std::int64_t>(j.size()) != a.order())
        throw CheckError("coefficient family must assign every element of " +
                         a.descriptor());
    for (int x : j)
        if (x < 0 || x >= a.order())
            throw CheckError("coefficient out of range");
    for (int x = 0; x < a.order(); ++x)
        if (j[x] != j[a.neg(x)])
            throw CheckError("coefficient symmetry fails at a=" + a.label(x) + ": j=" +
                             a.label(j[x]) + " but j at -a is " + a.label(j[a.neg(x)]));
    int ord = t.order();
    GroupAut ts = GroupAut::identity(a);
    for (int s = 0; s < ord; ++s) {
        for (int x = 0; x < a.order(); ++x) {
            int lhs = a.sub(j[ts.apply(x)], j[a.zero()]);
            int rhs = ts.apply(a.sub(j[x], j[a.zero()]));
            if (lhs != rhs)
                throw CheckError("coefficient equivariance fails at a=" + a.label(x) +
                                 ", s=" + std::to_string(s) + ": difference " +
                                 a.label(lhs) + " vs " + a.label(rhs));
        }
        ts = ts.compose(t);
    }
    return JFamily{a, t, std::move(j)};
}

std::string JFamily::describe() const {
    std::ostringstream os;
    for (int x = 0; x < group.order(); ++x)
        os << (x ? "," : "") << group.label(x) << "->" << group.label(j[x]);
    return os.str();
}

std::vector<JFamily> enumerate_jfamilies(const FinAbGroup& a, const GroupAut& t) {
    std::int64_t n = a.order();
    int ord = t.order();
    // Powers of t as permutations.
    std::vector<std::vector<int>> tp(ord);
    {
        GroupAut cur = GroupAut::identity(a);
        for (int s = 0; s < ord; ++s) {
            tp[s] = cur.perm();
            cur = cur.compose(t);
        }
    }
    // Orbits of <t, negation> on the nonzero elements. For each orbit, the
    // admissible offsets v = j_rep - j_0 form the subgroup fixed by every
    // power of t that maps the representative to itself or its negative.
    struct Orbit {
        int rep;
        std::vector<std::pair<int, int>> fill; // (element, power s) with elem = ±t^s(rep)
        std::vector<int> choices;              // admissible offsets
    };
    std::vector<Orbit> orbits;
    std::vector<std::uint8_t> seen(n, 0);
    seen[a.zero()] = 1;
    for (int rep = 0; rep < n; ++rep) {
        if (seen[rep])
            continue;
        Orbit o;
        o.rep = rep;
        std::vector<int> stab_powers;
        for (int s = 0; s < ord; ++s) {
            int x = tp[s][rep];
            if (x == rep || a.neg(x) == rep)
                stab_powers.push_back(s);
            if (!seen[x]) {
                seen[x] = 1;
                o.fill.emplace_back(x, s);
            }
            int nx = a.neg(x);
            if (!seen[nx]) {
                seen[nx] = 1;
                o.fill.emplace_back(nx, s);
            }
        }
        for (int v = 0; v < n; ++v) {
            bool ok = true;
            for (int s : stab_powers)
                if (tp[s][v] != v) {
                    ok = false;
                    break;
                }
            if (ok)
                o.choices.push_back(v);
        }
        orbits.push_back(std::move(o));
    }

    std::vector<JFamily> out;
    std::vector<std::size_t> digit(orbits.size(), 0);
    std::vector<int> j(n);
    while (true) {
        for (int j0 = 0; j0 < n; ++j0) {
            j[a.zero()] = j0;
            for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
                int v = orbits[oi].choices[digit[oi]];
                for (auto [x, s] : orbits[oi].fill)
                    j[x] = a.add(j0, tp[s][v]);
            }
            out.push_back(JFamily::make(a, t, j));
        }
        std::size_t c = 0;
        while (c < orbits.size() && ++digit[c] == orbits[c].choices.size()) {
            digit[c] = 0;
            ++c;
        }
        if (c == orbits.size())
            break;
    }
    return out;
}

// ----------------------------------------------------------------- pair maps

Solution construct_newsol(const JFamily& jf) {
    const FinAbGroup& a = jf.group;
    const GroupAut& t = jf.twist;
    std::int64_t na = a.order();
    int n = static_cast<int>(na * na);
    std::vector<int> sigma(static_cast<std::size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (int a1 = 0; a1 < na; ++a1)
        for (int a2 = 0; a2 < na; ++a2) {
            int p = newsol_point(a, a1, a2);
            labels[p] = "(" + a.label(a1) + "," + a.label(a2) + ")";
            for (int c1 = 0; c1 < na; ++c1) {
                int u = a.add(t.apply(c1), a2);
                int d = jf.j[a.sub(u, a1)];
                for (int c2 = 0; c2 < na; ++c2)
                    sigma[static_cast<std::size_t>(p) * n + newsol_point(a, c1, c2)] =
                        newsol_point(a, u, t.apply(a.sub(c2, d)));
            }
        }
    Solution s = Solution::make_flat(n, std::move(sigma), std::move(labels));

    // Closed inverse formula must give exactly the row inverses.
    GroupAut ti = t.inverse();
    for (int a1 = 0; a1 < na; ++a1)
        for (int a2 = 0; a2 < na; ++a2) {
            int p = newsol_point(a, a1, a2);
            for (int c1 = 0; c1 < na; ++c1)
                for (int c2 = 0; c2 < na; ++c2) {
                    int q = newsol_point(a, ti.apply(a.sub(c1, a2)),
                                         a.add(ti.apply(c2), jf.j[a.sub(c1, a1)]));
                    if (s.sigma_inv(p, newsol_point(a, c1, c2)) != q)
                        throw CheckError("closed inverse formula disagrees with the "
                                         "row inverse at " +
                                         s.labels()[p]);
                }
        }
    return s;
}

namespace {

// Second coordinates of the predicted orbit of (0,0): cosets of the
// difference span along the two eventually periodic partial-sum sequences.
std::vector<int> predicted_reach(const JFamily& jf, const Subgroup& w) {
    const FinAbGroup& a = jf.group;
    int j0 = jf.j[a.zero()];
    GroupAut ti = jf.twist.inverse();
    std::vector<std::uint8_t> in(a.order(), 0);
    auto add_coset = [&](int shift) {
        for (int m : w.members())
            in[a.add(m, shift)] = 1;
    };
    {
        // p_k = j0 + t^{-1}(j0) + ... + t^{-k}(j0), iterated as
        // p_{k+1} = j0 + t^{-1}(p_k); the map is deterministic, so stop on a
        // repeated value.
        std::vector<std::uint8_t> seen(a.order(), 0);
        int p = j0;
        while (!seen[p]) {
            seen[p] = 1;
            add_coset(p);
            p = a.add(j0, ti.apply(p));
        }
    }
    {
        // q_k = -(t(j0) + ... + t^k(j0)) with q_0 = 0; the state is the pair
        // (value, k mod order of t).
        int ord = jf.twist.order();
        std::vector<std::uint8_t> seen(a.order() * ord, 0);
        int q = a.zero();
        int w_pow = jf.twist.apply(j0); // t^{k+1}(j0) for the upcoming step
        int phase = 0;
        while (!seen[static_cast<std::size_t>(q) * ord + phase]) {
            seen[static_cast<std::size_t>(q) * ord + phase] = 1;
            add_coset(q);
            q = a.sub(q, w_pow);
            w_pow = jf.twist.apply(w_pow);
            phase = (phase + 1) % ord;
        }
    }
    std::vector<int> reach;
    for (int x = 0; x < a.order(); ++x)
        if (in[x])
            reach.push_back(x);
    return reach;
}

Subgroup separator_subgroup(const JFamily& jf, int elem) {
    const FinAbGroup& a = jf.group;
    int ord = jf.twist.order();
    std::vector<int> gens;
    GroupAut ts = GroupAut::identity(a);
    for (int s = 0; s < ord; ++s) {
        int shift = ts.apply(elem);
        for (int c = 0; c < a.order(); ++c)
            gens.push_back(a.sub(jf.j[c], jf.j[a.add(c, shift)]));
        ts = ts.compose(jf.twist);
    }
    Subgroup v = Subgroup::generated(a, gens);
    while (true) {
        std::vector<int> more = v.generators();
        for (int m : v.members())
            for (int c = 0; c < a.order(); ++c)
                more.push_back(a.sub(jf.j[c], jf.j[a.add(c, m)]));
        Subgroup next = Subgroup::generated(a, more);
        if (next.size() == v.size())
            return v;
        v = std::move(next);
    }
}

} // namespace

NewsolAnalysis analyze_newsol(const JFamily& jf, const Solution* prebuilt,
                              bool compute_group, std::int64_t perm_cap) {
    const FinAbGroup& a = jf.group;
    std::optional<Solution> local;
    if (!prebuilt)
        local = construct_newsol(jf);
    const Solution& s = prebuilt ? *prebuilt : *local;
    std::int64_t na = a.order();

    NewsolAnalysis out{Subgroup::trivial(a), {}, false, false, false, false,
                       {},                  false, false, false, false, {}, -1};

    std::vector<int> diff_gens;
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            diff_gens.push_back(a.sub(jf.j[x], jf.j[y]));
    out.diff_span = Subgroup::generated(a, diff_gens);
    out.reach = predicted_reach(jf, out.diff_span);

    OrbitInfo oi = solution_orbits(s);
    out.indecomposable = oi.transitive;
    {
        std::vector<int> predicted;
        for (int a1 = 0; a1 < na; ++a1)
            for (int c : out.reach)
                predicted.push_back(newsol_point(a, a1, c));
        std::sort(predicted.begin(), predicted.end());
        const auto& actual = oi.orbits[oi.orbit_of[newsol_point(a, 0, 0)]];
        out.orbit_matches = predicted == actual;
    }

    out.irretractable_criterion = true;
    for (int x = 1; x < na && out.irretractable_criterion; ++x) {
        bool shifts = false;
        for (int c = 0; c < na; ++c)
            if (jf.j[a.add(x, c)] != jf.j[c]) {
                shifts = true;
                break;
            }
        if (!shifts)
            out.irretractable_criterion = false;
    }
    out.irretractable = is_irretractable(s);

    out.separator.reserve(na);
    out.separators_full = true;
    out.separator.push_back(Subgroup::trivial(a)); // index 0 placeholder
    for (int x = 1; x < na; ++x) {
        out.separator.push_back(separator_subgroup(jf, x));
        if (!out.separator.back().is_whole_group())
            out.separators_full = false;
    }
    if (na == 1)
        out.separators_full = true;

    out.parity_ok = (na % 2 == 1) || (jf.twist.order() % 2 == 1);
    out.simple_guaranteed = out.separators_full && out.parity_ok && na > 1;
    out.simple = s.size() > 1 && is_simple_solution(s).simple;
    out.mpl = multipermutation_level(s);
    if (compute_group)
        out.perm_group_order = permutation_group(s, perm_cap).size();
    return out;
}

// ------------------------------------------------------- function-space model

AsymModel build_asym_model(const JFamily& jf, const Solution* prebuilt,
                           std::int64_t group_cap, std::int64_t brace_cap) {
    const FinAbGroup& a = jf.group;
    std::int64_t na = a.order();
    if (na < 2)
        throw CheckError("the function-space model needs a nontrivial group");
    int n = a.exponent();
    auto tm1 = jf.twist.minus_identity();
    if (!tm1)
        throw CheckError("twist - id is not bijective on " + a.descriptor() +
                         "; the function-space model does not apply");
    GroupAut d = tm1->inverse();
    int ord = jf.twist.order();
    if (ord < 2)
        throw CheckError("twist of order 1 cannot have twist - id bijective on a "
                         "nontrivial group"); // unreachable
    int j0 = jf.j[a.zero()];
    bool gcd_ok = std::gcd<std::int64_t>(ord, n) == 1;
    FinAbGroup fun_group(std::vector<int>(na, n), group_cap);

    // affine = A x <twist> with the twist powers acting on the left factor.
    FinAbGroup tgrp({ord});
    std::vector<GroupAut> action_t;
    for (int s = 0; s < ord; ++s)
        action_t.push_back(jf.twist.pow(s));
    FiniteBrace affine = semidirect_trivial(a, tgrp, action_t, brace_cap);
    std::int64_t n_aff = affine.size();
    auto aff_idx = [&](int elem_a, int s) { return static_cast<int>(elem_a * ord + s); };

    // The point transforms g_{(c,s)}(x) = t^{-s}(x - c - kappa_s) with
    // kappa_s = D^2(t^{s+1}(j0) - t(j0)), D = (t - id)^{-1}.
    std::vector<int> kappa(ord);
    for (int s = 0; s < ord; ++s) {
        int v = a.sub(jf.twist.pow(s + 1).apply(j0), jf.twist.apply(j0));
        kappa[s] = d.apply(d.apply(v));
    }
    std::vector<std::vector<int>> tinv_pow(ord);
    {
        GroupAut ti = jf.twist.inverse();
        GroupAut cur = GroupAut::identity(a);
        for (int s = 0; s < ord; ++s) {
            tinv_pow[s] = cur.perm();
            cur = cur.compose(ti);
        }
    }

    std::int64_t nh = fun_group.order();
    std::vector<std::vector<int>> action(n_aff, std::vector<int>(nh));
    std::vector<std::int64_t> img(na);
    for (int c = 0; c < na; ++c)
        for (int s = 0; s < ord; ++s) {
            // permutation of A induced by g_{(c,s)}
            std::vector<int> gperm(na);
            for (int x = 0; x < na; ++x)
                gperm[x] = tinv_pow[s][a.sub(a.sub(x, c), kappa[s])];
            for (std::int64_t f = 0; f < nh; ++f) {
                auto tf = fun_group.tuple_of(static_cast<int>(f));
                for (int x = 0; x < na; ++x)
                    img[x] = tf[gperm[x]];
                action[aff_idx(c, s)][f] = fun_group.index_of(img);
            }
        }

    // form(f,h) = (sum_{x,y} f(x) h(y) t(j_{x-y} - j_0), identity twist).
    std::vector<int> pair_elem(na * na);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            pair_elem[x * na + y] = jf.twist.apply(a.sub(jf.j[a.sub(x, y)], j0));
    std::vector<std::vector<int>> form(nh, std::vector<int>(nh));
    for (std::int64_t f = 0; f < nh; ++f) {
        auto tf = fun_group.tuple_of(static_cast<int>(f));
        for (std::int64_t h = 0; h < nh; ++h) {
            auto th = fun_group.tuple_of(static_cast<int>(h));
            int acc = a.zero();
            for (int x = 0; x < na; ++x) {
                if (!tf[x])
                    continue;
                for (int y = 0; y < na; ++y) {
                    if (!th[y])
                        continue;
                    acc = a.add(acc, a.scalar_mul(
                                         static_cast<std::int64_t>(tf[x]) * th[y],
                                         pair_elem[x * na + y]));
                }
            }
            form[f][h] = aff_idx(acc, 0);
        }
    }

    FiniteBrace product = asymmetric_product(trivial_brace(fun_group, brace_cap),
                                             affine, action, form, brace_cap);

    // Distinguished points: (indicator of a, (c - t(D(j0)), first twist power)).
    int shift = jf.twist.apply(d.apply(j0));
    std::vector<int> points(na * na, 0);
    std::vector<std::int64_t> ind(na);
    for (int pa = 0; pa < na; ++pa)
        for (int pc = 0; pc < na; ++pc) {
            std::fill(ind.begin(), ind.end(), 0);
            ind[pa] = 1;
            int f = fun_group.index_of(ind);
            int aff = aff_idx(a.sub(pc, shift), 1);
            points[newsol_point(a, pa, pc)] = f * static_cast<int>(n_aff) + aff;
        }

    Solution restricted = restricted_solution(product, points);

    // The identification (a,c) -> point must be a solution isomorphism onto
    // the restricted solution; the point list is pair-ordered, so the two
    // sigma tables must agree entrywise.
    std::optional<Solution> local;
    if (!prebuilt)
        local = construct_newsol(jf);
    const Solution& base = prebuilt ? *prebuilt : *local;
    for (int x = 0; x < base.size(); ++x)
        for (int y = 0; y < base.size(); ++y)
            if (restricted.sigma(x, y) != base.sigma(x, y))
                throw CheckError("model points do not reproduce the pair solution at (" +
                                 base.labels()[x] + "," + base.labels()[y] + ")");

    // Radical of the form.
    std::vector<int> rad;
    for (std::int64_t f = 0; f < nh; ++f) {
        bool zero = true;
        for (std::int64_t h = 0; h < nh && zero; ++h)
            zero = form[f][h] == affine.zero();
        if (zero)
            rad.push_back(static_cast<int>(f));
    }
    Subgroup radical = Subgroup::generated(fun_group, rad);
    if (radical.size() != static_cast<std::int64_t>(rad.size()))
        throw CheckError("form radical is not a subgroup"); // bug signal

    // When the twist order is coprime to the exponent, the points generate
    // the whole product additively.
    if (gcd_ok) {
        std::vector<std::uint8_t> in(product.size(), 0);
        std::vector<int> work;
        std::int64_t count = 1;
        in[product.zero()] = 1;
        work.push_back(product.zero());
        while (!work.empty()) {
            int x = work.back();
            work.pop_back();
            for (int p : points) {
                for (int y : {product.add(x, p), product.sub(x, p)})
                    if (!in[y]) {
                        in[y] = 1;
                        ++count;
                        work.push_back(y);
                    }
            }
        }
        if (count != product.size())
            throw CheckError("points do not generate the product additively "
                             "despite the coprimality condition");
    }

    return AsymModel{jf,
                     n,
                     gcd_ok,
                     std::move(fun_group),
                     std::move(affine),
                     std::move(product),
                     std::move(action),
                     std::move(form),
                     std::move(points),
                     std::move(restricted),
                     std::move(radical)};
}

FiniteBrace model_perm_brace(const AsymModel& model, std::int64_t perm_cap,
                             std::int64_t brace_cap) {
    if (!model.gcd_ok)
        throw CheckError("model requires the twist order to be coprime to the "
                         "exponent; refusing to guess outside that range");
    const FinAbGroup& h = model.fun_group;
    QuotientGroup q = quotient(h, model.radical);
    std::int64_t nq = q.group.order();
    std::int64_t n_aff = model.affine.size();

    // Induced action: well-defined because the action preserves the radical.
    std::vector<std::vector<int>> bar_action(n_aff, std::vector<int>(nq, -1));
    for (std::int64_t r = 0; r < n_aff; ++r) {
        for (std::int64_t f = 0; f < h.order(); ++f) {
            int src = q.projection[f];
            int dst = q.projection[model.action[r][f]];
            if (bar_action[r][src] == -1)
                bar_action[r][src] = dst;
            else if (bar_action[r][src] != dst)
                throw CheckError("induced action is ill-defined on the quotient");
        }
    }
    // Induced form.
    std::vector<std::vector<int>> bar_form(nq, std::vector<int>(nq, -1));
    for (std::int64_t f = 0; f < h.order(); ++f)
        for (std::int64_t g = 0; g < h.order(); ++g) {
            int sf = q.projection[f], sg = q.projection[g];
            int v = model.form[f][g];
            if (bar_form[sf][sg] == -1)
                bar_form[sf][sg] = v;
            else if (bar_form[sf][sg] != v)
                throw CheckError("induced form is ill-defined on the quotient");
        }

    FiniteBrace quotient_product = asymmetric_product(
        trivial_brace(q.group, brace_cap), model.affine, bar_action, bar_form,
        brace_cap);
    if (quotient_product.size() != nq * n_aff)
        throw CheckError("quotient product has unexpected order"); // unreachable

    SolutionBrace sb = brace_from_solution(model.restricted, perm_cap, brace_cap);
    if (sb.brace.size() != quotient_product.size())
        throw CheckError("permutation group order " + std::to_string(sb.brace.size()) +
                         " does not match the predicted " +
                         std::to_string(quotient_product.size()));
    if (!find_brace_isomorphism(quotient_product, sb.brace))
        throw CheckError("no isomorphism found between the quotient product and the "
                         "permutation-group brace");
    return quotient_product;
}

// -------------------------------------------------------------- grid solution

Solution construct_grid(std::int64_t n, std::int64_t m, std::int64_t t) {
    if (n <= 1 || m <= 1)
        throw CheckError("grid parameters must exceed 1");
    t %= n;
    if (t < 0)
        t += n;
    if (std::gcd(t, n) != 1)
        throw CheckError("grid unit t must be invertible mod n");
    std::vector<std::int64_t> tpow(m + 1, 1);
    for (std::int64_t e = 1; e <= m; ++e)
        tpow[e] = tpow[e - 1] * t % n;
    if (tpow[m] != 1)
        throw CheckError("t^m != 1 mod n: t does not have order " + std::to_string(m));
    for (std::int64_t e = 1; e < m; ++e)
        if (tpow[e] == 1)
            throw CheckError("t has order " + std::to_string(e) + " mod n, expected " +
                             std::to_string(m));

    int sz = static_cast<int>(n * m * m);
    std::vector<int> sigma(static_cast<std::size_t>(sz) * sz);
    std::vector<std::string> labels(sz);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t za = 0; za < m; ++za)
            for (std::int64_t mu = 0; mu < m; ++mu) {
                int p = grid_point(n, m, i, za, mu);
                labels[p] = "(" + std::to_string(i) + "," + std::to_string(za) + "," +
                            std::to_string(mu) + ")";
                for (std::int64_t jj = 0; jj < n; ++jj)
                    for (std::int64_t c = 0; c < m; ++c)
                        for (std::int64_t nu = 0; nu < m; ++nu) {
                            std::int64_t first = (tpow[mu] * jj + tpow[za]) % n;
                            std::int64_t second = (c + mu) % m;
                            std::int64_t third =
                                (nu + 1 + (i == first ? m - 1 : 0)) % m;
                            sigma[static_cast<std::size_t>(p) * sz +
                                  grid_point(n, m, jj, c, nu)] =
                                grid_point(n, m, first, second, third);
                        }
            }
    Solution s = Solution::make_flat(sz, std::move(sigma), std::move(labels));
    if (!is_indecomposable(s))
        throw CheckError("grid solution is unexpectedly decomposable");
    if (!is_irretractable(s))
        throw CheckError("grid solution is unexpectedly retractable");
    return s;
}

// -------------------------------------------------------- simple brace family

SimpleFamily construct_simple_family(
    std::int64_t p, const std::vector<std::pair<std::int64_t, int>>& prime_powers,
    std::int64_t group_cap, std::int64_t brace_cap, std::int64_t perm_cap) {
    auto prime = [](std::int64_t v) {
        if (v < 2)
            return false;
        for (std::int64_t d = 2; d * d <= v; ++d)
            if (v % d == 0)
                return false;
        return true;
    };
    if (!prime(p))
        throw CheckError("p must be prime");
    if (prime_powers.empty())
        throw CheckError("at least one prime power is required");
    std::set<std::int64_t> seen_primes;
    std::int64_t n = 1;
    for (auto [pi, mi] : prime_powers) {
        if (!prime(pi) || pi == p)
            throw CheckError("factor base must consist of primes distinct from p");
        if (!seen_primes.insert(pi).second)
            throw CheckError("repeated prime " + std::to_string(pi));
        if (mi < 1)
            throw CheckError("exponents must be positive");
        if ((pi - 1) % p != 0)
            throw CheckError("p must divide " + std::to_string(pi) + " - 1");
        for (int e = 0; e < mi; ++e)
            n *= pi;
    }

    // Smallest unit of order exactly p mod n whose predecessor is also a
    // unit; existence is guaranteed by the congruence conditions above.
    std::int64_t t = -1;
    for (std::int64_t cand = 2; cand < n; ++cand) {
        if (std::gcd(cand, n) != 1 || std::gcd(cand - 1, n) != 1)
            continue;
        std::int64_t pw = 1;
        for (std::int64_t e = 0; e < p; ++e)
            pw = pw * cand % n;
        if (pw == 1) {
            t = cand;
            break;
        }
    }
    if (t < 0)
        throw CheckError("no unit of order " + std::to_string(p) + " mod " +
                         std::to_string(n) + " with invertible t-1 exists");

    auto ring = std::make_shared<CycRing>(p, n, group_cap);
    if (!ring->form_nondegenerate())
        throw CheckError("ring form is degenerate for p=" + std::to_string(p) +
                         ", n=" + std::to_string(n) + " (certificate gap)");
    ring->verify_twist_properties(t);

    // frame = R x Z/n, the n-th power twist acting by multiplication by xi.
    FinAbGroup zn({static_cast<int>(n)});
    GroupAut c = ring->xi_times_aut();
    std::vector<GroupAut> beta;
    for (std::int64_t e = 0; e < n; ++e)
        beta.push_back(c.pow(e));
    FiniteBrace frame = semidirect_trivial(ring->additive_group(), zn, beta, brace_cap);
    std::int64_t n_frame = frame.size();
    auto frame_idx = [&](int u, std::int64_t za) {
        return static_cast<int>(u * n + za);
    };

    // Z/p acts by (u,a) -> (subst(u), t*a); the form descends from the ring.
    FiniteBrace zp = trivial_brace(FinAbGroup({static_cast<int>(p)}), brace_cap);
    GroupAut f_aut = ring->subst_pow_aut(t);
    std::vector<std::vector<int>> action(p, std::vector<int>(n_frame));
    for (std::int64_t mu = 0; mu < p; ++mu) {
        GroupAut fmu = f_aut.pow(mu);
        std::int64_t tmu = 1;
        for (std::int64_t e = 0; e < mu; ++e)
            tmu = tmu * t % n;
        for (std::int64_t u = 0; u < ring->size(); ++u)
            for (std::int64_t za = 0; za < n; ++za)
                action[mu][frame_idx(static_cast<int>(u), za)] =
                    frame_idx(fmu.apply(static_cast<int>(u)), tmu * za % n);
    }
    std::vector<std::vector<int>> form(n_frame, std::vector<int>(n_frame));
    for (std::int64_t u = 0; u < ring->size(); ++u)
        for (std::int64_t za = 0; za < n; ++za)
            for (std::int64_t v = 0; v < ring->size(); ++v)
                for (std::int64_t zb = 0; zb < n; ++zb)
                    form[frame_idx(static_cast<int>(u), za)]
                        [frame_idx(static_cast<int>(v), zb)] =
                            ring->form(static_cast<int>(u), static_cast<int>(v));

    FiniteBrace brace = asymmetric_product(frame, zp, action, form, brace_cap);
    auto brace_idx = [&](int u, std::int64_t za, std::int64_t mu) {
        return static_cast<int>(frame_idx(u, za) * p + mu);
    };

    // The distinguished orbit: (xi^i, t^j mod n, k).
    std::vector<int> points;
    points.reserve(n * p * p);
    std::vector<std::int64_t> tj(p, 1);
    for (std::int64_t e = 1; e < p; ++e)
        tj[e] = tj[e - 1] * t % n;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t jj = 0; jj < p; ++jj)
            for (std::int64_t k = 0; k < p; ++k)
                points.push_back(brace_idx(ring->xi_pow(i), tj[jj], k));
    Solution restricted = restricted_solution(brace, points);

    Solution grid = construct_grid(n, p, t);
    // grid point (i,a,mu) corresponds to orbit point (xi^i, t^a, mu), which
    // is how `points` is ordered.
    std::vector<int> iso(grid.size());
    std::iota(iso.begin(), iso.end(), 0);
    for (int x = 0; x < grid.size(); ++x)
        for (int y = 0; y < grid.size(); ++y)
            if (restricted.sigma(x, y) != grid.sigma(x, y))
                throw CheckError("orbit solution disagrees with the grid solution at (" +
                                 grid.labels()[x] + "," + grid.labels()[y] + ")");

    if (!is_simple_brace(brace))
        throw CheckError("constructed brace is not simple (certificate gap)");
    if (socle(brace).members.size() != 1)
        throw CheckError("constructed brace has nonzero socle (certificate gap)");
    if (!is_simple_solution(grid).simple)
        throw CheckError("grid solution is not simple (certificate gap)");

    SolutionBrace sb = brace_from_solution(grid, perm_cap, brace_cap);
    if (!find_brace_isomorphism(sb.brace, brace))
        throw CheckError("permutation-group brace is not isomorphic to the "
                         "constructed brace (certificate gap)");

    return SimpleFamily{p,
                        n,
                        t,
                        ring,
                        std::move(frame),
                        std::move(brace),
                        std::move(points),
                        std::move(restricted),
                        std::move(grid),
                        std::move(iso)};
}

} // namespace ybx
