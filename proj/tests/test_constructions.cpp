#include "doctest.h"

#include <numeric>

#include "ybx/constructions.hpp"
#include "ybx/probe.hpp"

using namespace ybx;

namespace {

JFamily four_point_family() {
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    return JFamily::make(z2, GroupAut::identity(z2), {0, 1});
}

JFamily sixteen_point_family() {
    FinAbGroup v4 = FinAbGroup::parse("Z2xZ2");
    GroupAut t = GroupAut::from_matrix(v4, {{0, 1}, {1, 1}});
    std::vector<int> j(4);
    std::iota(j.begin(), j.end(), 0); // j_a = a
    return JFamily::make(v4, t, j);
}

} // namespace

TEST_CASE("coefficient family laws") {
    CHECK_NOTHROW(four_point_family());
    CHECK_NOTHROW(sixteen_point_family());

    FinAbGroup z3 = FinAbGroup::parse("Z3");
    GroupAut dbl = GroupAut::from_matrix(z3, {{2}});
    // j = (0,1,1): symmetric, but the equivariance law fails at a=1, s=1
    CHECK_THROWS_AS(JFamily::make(z3, dbl, {0, 1, 1}), CheckError);
    // asymmetric family on Z3 with the identity twist
    CHECK_THROWS_AS(JFamily::make(z3, GroupAut::identity(z3), {0, 1, 2}),
                    CheckError);
}

TEST_CASE("family enumeration") {
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    CHECK(enumerate_jfamilies(z2, GroupAut::identity(z2)).size() == 4);

    FinAbGroup z3 = FinAbGroup::parse("Z3");
    auto fams = enumerate_jfamilies(z3, GroupAut::from_matrix(z3, {{2}}));
    CHECK(fams.size() == 3);
    for (const auto& f : fams)
        for (int x = 0; x < 3; ++x)
            CHECK(f.j[x] == f.j[0]); // only constant families survive

    FinAbGroup v4 = FinAbGroup::parse("Z2xZ2");
    GroupAut t = GroupAut::from_matrix(v4, {{0, 1}, {1, 1}});
    auto fams4 = enumerate_jfamilies(v4, t);
    CHECK(fams4.size() == 16);
    bool has_identity_family = false;
    for (const auto& f : fams4) {
        bool ident = true;
        for (int x = 0; x < 4; ++x)
            ident = ident && f.j[x] == x;
        has_identity_family = has_identity_family || ident;
    }
    CHECK(has_identity_family);

    FinAbGroup z6 = FinAbGroup::parse("Z6");
    CHECK(enumerate_jfamilies(z6, GroupAut::identity(z6)).size() == 1296);
}

TEST_CASE("pair solution values") {
    JFamily jf = four_point_family();
    Solution s = construct_newsol(jf);
    const FinAbGroup& a = jf.group;
    CHECK(s.size() == 4);
    // sigma_{(0,0)}(0,0) = (0,0) and sigma_{(0,0)}(1,0) = (1,1)
    CHECK(s.sigma(newsol_point(a, 0, 0), newsol_point(a, 0, 0)) ==
          newsol_point(a, 0, 0));
    CHECK(s.sigma(newsol_point(a, 0, 0), newsol_point(a, 1, 0)) ==
          newsol_point(a, 1, 1));
    // sigma_{(0,1)} is the 4-cycle (0,0)->(1,1)->(0,1)->(1,0)->(0,0)
    int p01 = newsol_point(a, 0, 1);
    CHECK(s.sigma(p01, newsol_point(a, 0, 0)) == newsol_point(a, 1, 1));
    CHECK(s.sigma(p01, newsol_point(a, 1, 1)) == newsol_point(a, 0, 1));
    CHECK(s.sigma(p01, newsol_point(a, 0, 1)) == newsol_point(a, 1, 0));
    CHECK(s.sigma(p01, newsol_point(a, 1, 0)) == newsol_point(a, 0, 0));
}

TEST_CASE("pair solution analysis") {
    JFamily jf = four_point_family();
    NewsolAnalysis an = analyze_newsol(jf, nullptr, true);
    CHECK(an.diff_span.size() == 2);
    CHECK(an.reach.size() == 2);
    CHECK(an.orbit_matches);
    CHECK(an.indecomposable);
    CHECK(an.irretractable_criterion);
    CHECK(an.irretractable);
    CHECK(an.separators_full);
    CHECK(an.parity_ok);
    CHECK(an.simple_guaranteed);
    CHECK(an.simple);
    CHECK_FALSE(an.mpl.has_value());
    CHECK(an.perm_group_order == 8);

    // constant zero coefficients: decomposable, retractable, not simple
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    JFamily flat = JFamily::make(z2, GroupAut::identity(z2), {0, 0});
    NewsolAnalysis an2 = analyze_newsol(flat);
    CHECK(an2.diff_span.size() == 1);
    CHECK_FALSE(an2.indecomposable);
    CHECK_FALSE(an2.irretractable);
    CHECK_FALSE(an2.irretractable_criterion);
    CHECK_FALSE(an2.simple);
    CHECK(an2.orbit_matches);

    // constant nonzero coefficients still reach everything through the
    // accumulated shifts, but stay retractable and non-simple
    JFamily flat1 = JFamily::make(z2, GroupAut::identity(z2), {1, 1});
    NewsolAnalysis an3 = analyze_newsol(flat1);
    CHECK(an3.indecomposable);
    CHECK_FALSE(an3.irretractable);
    CHECK_FALSE(an3.simple);
    CHECK(an3.orbit_matches);
}

TEST_CASE("sixteen point instance analysis") {
    JFamily jf = sixteen_point_family();
    NewsolAnalysis an = analyze_newsol(jf, nullptr, true);
    CHECK(an.diff_span.is_whole_group());
    CHECK(an.irretractable);
    CHECK(an.separators_full);
    CHECK(an.parity_ok); // twist order 3
    CHECK(an.simple);
    CHECK(an.perm_group_order == 96);
}

TEST_CASE("function space model of the sixteen point instance") {
    JFamily jf = sixteen_point_family();
    AsymModel m = build_asym_model(jf);
    CHECK(m.exponent == 2);
    CHECK(m.gcd_ok);
    CHECK(m.fun_group.order() == 16);
    CHECK(m.affine.size() == 12);
    CHECK(m.product.size() == 192);
    CHECK(m.restricted.size() == 16);
    CHECK(m.radical.size() == 2);

    // independent radical description for these coefficients: functions with
    // zero total mass and zero first moment
    const FinAbGroup& a = jf.group;
    std::vector<int> expected;
    for (int f = 0; f < m.fun_group.order(); ++f) {
        auto tf = m.fun_group.tuple_of(f);
        int mass = 0, moment = a.zero();
        for (int x = 0; x < a.order(); ++x) {
            mass = (mass + tf[x]) % 2;
            moment = a.add(moment, a.scalar_mul(tf[x], x));
        }
        if (mass == 0 && moment == a.zero())
            expected.push_back(f);
    }
    CHECK(expected == m.radical.members());

    FiniteBrace model = model_perm_brace(m);
    CHECK(model.size() == 96);

    // the product brace modulo its socle is the permutation-group brace
    BraceSubset soc = socle(m.product);
    CHECK(soc.members.size() == 2);
    QuotientBrace q = quotient_brace(m.product, soc);
    CHECK(find_brace_isomorphism(q.brace, model).has_value());
}

TEST_CASE("model degenerates for constant coefficients") {
    FinAbGroup z3 = FinAbGroup::parse("Z3");
    GroupAut dbl = GroupAut::from_matrix(z3, {{2}});
    JFamily constant = JFamily::make(z3, dbl, {0, 0, 0});
    AsymModel m = build_asym_model(constant);
    CHECK(m.fun_group.order() == 27);
    CHECK(m.affine.size() == 6);
    CHECK(m.product.size() == 162);
    CHECK(m.radical.size() == 27); // the form vanishes identically
    FiniteBrace model = model_perm_brace(m);
    CHECK(model.size() == 6);
}

TEST_CASE("model requires an invertible displaced twist") {
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    JFamily jf = four_point_family();
    CHECK_THROWS_AS(build_asym_model(jf), CheckError); // twist = id on Z2
    (void)z2;
}

TEST_CASE("grid solutions") {
    Solution g = construct_grid(3, 2, 2);
    CHECK(g.size() == 12);
    // frozen values
    CHECK(g.sigma(grid_point(3, 2, 0, 0, 0), grid_point(3, 2, 0, 0, 0)) ==
          grid_point(3, 2, 1, 0, 1));
    CHECK(g.sigma(grid_point(3, 2, 2, 1, 1), grid_point(3, 2, 0, 0, 0)) ==
          grid_point(3, 2, 2, 1, 0));
    // the closed inverse formula gives the row inverses
    std::vector<std::int64_t> tpow{1, 2};
    auto tinv = [&](std::int64_t e, std::int64_t x) {
        // t = 2 has order 2 mod 3, so t^{-e} = t^{e mod 2}
        return (tpow[e % 2] * x) % 3;
    };
    for (std::int64_t i = 0; i < 3; ++i)
        for (std::int64_t za = 0; za < 2; ++za)
            for (std::int64_t mu = 0; mu < 2; ++mu) {
                int p = grid_point(3, 2, i, za, mu);
                for (std::int64_t jj = 0; jj < 3; ++jj)
                    for (std::int64_t c = 0; c < 2; ++c)
                        for (std::int64_t nu = 0; nu < 2; ++nu) {
                            std::int64_t f =
                                tinv(mu, ((jj - tpow[za]) % 3 + 3) % 3);
                            std::int64_t sc = ((c - mu) % 2 + 2) % 2;
                            std::int64_t th =
                                ((nu - 1 + (i == jj ? 1 : 0)) % 2 + 2) % 2;
                            CHECK(g.sigma_inv(p, grid_point(3, 2, jj, c, nu)) ==
                                  grid_point(3, 2, f, sc, th));
                        }
            }

    CHECK(is_indecomposable(g));
    CHECK(is_irretractable(g));
    CHECK_NOTHROW(construct_grid(5, 2, 4));
    CHECK_THROWS_AS(construct_grid(3, 2, 1), CheckError); // order 1, not 2
    CHECK_THROWS_AS(construct_grid(4, 2, 2), CheckError); // 2 not a unit mod 4
}

TEST_CASE("simple family construction") {
    SimpleFamily fam = construct_simple_family(2, {{3, 1}});
    CHECK(fam.n == 3);
    CHECK(fam.t == 2);
    CHECK(fam.ring->size() == 4);
    CHECK(fam.brace.size() == 24);
    CHECK(fam.grid.size() == 12);
    CHECK(fam.points.size() == 12);
    CHECK(socle(fam.brace).members.size() == 1);
    CHECK(is_simple_brace(fam.brace));

    // frozen lambda value: the point (1, 0, 0) fixes itself
    int one = fam.ring->one();
    int idx = (one * 3 + 0) * 2 + 0;
    CHECK(fam.brace.lambda(idx, idx) == idx);

    // closed lambda formula against the table, on the whole brace
    const CycRing& r = *fam.ring;
    for (int u = 0; u < r.size(); ++u)
        for (std::int64_t za = 0; za < 3; ++za)
            for (std::int64_t mu = 0; mu < 2; ++mu) {
                int x = (u * 3 + static_cast<int>(za)) * 2 + static_cast<int>(mu);
                for (int v = 0; v < r.size(); ++v)
                    for (std::int64_t zb = 0; zb < 3; ++zb)
                        for (std::int64_t mv = 0; mv < 2; ++mv) {
                            int y = (v * 3 + static_cast<int>(zb)) * 2 +
                                    static_cast<int>(mv);
                            int img = v;
                            for (std::int64_t e = 0; e < mu; ++e)
                                img = r.subst_pow(fam.t, img);
                            for (std::int64_t e = 0; e < za; ++e)
                                img = r.xi_times(img);
                            std::int64_t tmu = mu == 0 ? 1 : fam.t;
                            std::int64_t a2 = (tmu * zb) % 3;
                            std::int64_t m2 =
                                ((mv - r.form(u, img)) % 2 + 2) % 2;
                            CHECK(fam.brace.lambda(x, y) ==
                                  (img * 3 + static_cast<int>(a2)) * 2 +
                                      static_cast<int>(m2));
                        }
            }
}

TEST_CASE("simple family with a larger base") {
    SimpleFamily fam = construct_simple_family(2, {{5, 1}});
    CHECK(fam.n == 5);
    CHECK(fam.t == 4);
    CHECK(fam.ring->size() == 16);
    CHECK(fam.brace.size() == 160);
    CHECK(fam.grid.size() == 20);
}

TEST_CASE("simple family rejects bad parameters") {
    CHECK_THROWS_AS(construct_simple_family(3, {{5, 1}}), CheckError); // 3 | 4 fails
    CHECK_THROWS_AS(construct_simple_family(2, {{2, 1}}), CheckError);
    CHECK_THROWS_AS(construct_simple_family(4, {{5, 1}}), CheckError);
    CHECK_THROWS_AS(construct_simple_family(2, {{3, 1}, {3, 1}}), CheckError);
    CHECK_THROWS_AS(construct_simple_family(2, {}), CheckError);
}

TEST_CASE("probe matches a direct per-family sweep") {
    // aggregate verdicts from the class-reduced probe must equal a family-by-
    // family run of the analysis pipeline
    for (const char* desc : {"Z2xZ2", "Z4", "Z5"}) {
        FinAbGroup g = FinAbGroup::parse(desc);
        GroupAut t = GroupAut::identity(g);
        ProbeReport pr = probe_converse(g, t);
        std::int64_t full_simple = 0, full_not = 0, part_simple = 0, part_not = 0;
        for (const JFamily& f : enumerate_jfamilies(g, t)) {
            NewsolAnalysis an = analyze_newsol(f);
            if (an.separators_full) {
                // full separators alone force transitivity and distinct rows
                CHECK(an.indecomposable);
                CHECK(an.irretractable);
            }
            if (an.separators_full && an.simple)
                ++full_simple;
            else if (an.separators_full)
                ++full_not;
            else if (an.simple)
                ++part_simple;
            else
                ++part_not;
        }
        CHECK(pr.sep_full_simple == full_simple);
        CHECK(pr.sep_full_not_simple == full_not);
        CHECK(pr.sep_partial_simple == part_simple);
        CHECK(pr.sep_partial_not_simple == part_not);
        CHECK(pr.families_total == full_simple + full_not + part_simple + part_not);
    }
}

TEST_CASE("probe frozen example counts") {
    FinAbGroup z2 = FinAbGroup::parse("Z2");
    ProbeReport p2 = probe_converse(z2, GroupAut::identity(z2));
    CHECK(p2.families_total == 4);
    CHECK(p2.sep_full_simple == 2);
    CHECK(p2.sep_partial_not_simple == 2);
    CHECK(p2.sep_partial_simple == 0);
    CHECK(p2.sep_full_not_simple == 0);

    FinAbGroup z3 = FinAbGroup::parse("Z3");
    ProbeReport p3 = probe_converse(z3, GroupAut::from_matrix(z3, {{2}}));
    CHECK(p3.families_total == 3);
    CHECK(p3.sep_partial_not_simple == 3);

    FinAbGroup v4 = FinAbGroup::parse("Z2xZ2");
    GroupAut t3 = GroupAut::from_matrix(v4, {{0, 1}, {1, 1}});
    ProbeReport p4 = probe_converse(v4, t3);
    CHECK(p4.families_total == 16);
    CHECK(p4.sep_full_simple == 12);
    CHECK(p4.sep_partial_not_simple == 4);
    CHECK(p4.sep_partial_simple == 0);
    CHECK(p4.sep_full_not_simple == 0);
}

TEST_CASE("simple solutions are indecomposable and irretractable") {
    // Over enumerated pair solutions (size |A|^2 > 2, never prime): every
    // simple instance must be transitive and have pairwise distinct rows.
    for (const char* desc : {"Z2", "Z3", "Z2xZ2"}) {
        FinAbGroup g = FinAbGroup::parse(desc);
        for (const GroupAut& t : all_automorphisms(g))
            for (const JFamily& f : enumerate_jfamilies(g, t)) {
                Solution s = construct_newsol(f);
                if (!is_simple_solution(s).simple)
                    continue;
                CHECK(is_indecomposable(s));
                CHECK(is_irretractable(s));
            }
    }
}

TEST_CASE("probe rejects oversized groups") {
    FinAbGroup g = FinAbGroup::parse("Z16");
    ProbeOptions opts;
    opts.max_order = 9;
    CHECK_THROWS_AS(probe_converse(g, GroupAut::identity(g), opts), CapError);
}
