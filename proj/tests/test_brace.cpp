#include "doctest.h"

#include <numeric>
#include <vector>

#include "ybx/brace.hpp"
#include "ybx/constructions.hpp"

using namespace ybx;

namespace {

Solution cyclic_solution(int n) {
    std::vector<std::vector<int>> sigma(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            sigma[x][y] = (y + 1) % n;
    return Solution::make(sigma);
}

Solution four_point() {
    return Solution::make({{0, 1, 3, 2}, {3, 2, 0, 1}, {1, 0, 2, 3}, {2, 3, 1, 0}});
}

// The law suite shared with the acceptance gate: the two difference
// identities, lambda multiplicativity, socle = kernel of lambda, Sylow
// subgroups of the additive group as left ideals.
void check_brace_laws(const FiniteBrace& b) {
    int m = b.size();
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < m; ++x) {
            int ax = b.mul(a, b.inv(x));
            CHECK(ax == b.sub(a, b.lambda(ax, x)));
            CHECK(b.sub(a, x) == b.mul(a, b.lambda(b.mul(b.inv(a), x), b.inv(x))));
        }
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c)
            for (int x = 0; x < m; ++x)
                CHECK(b.lambda(b.mul(a, c), x) == b.lambda(a, b.lambda(c, x)));
    BraceSubset soc = socle(b);
    CHECK(soc.ideal);
    for (int a = 0; a < m; ++a) {
        bool lam_id = true;
        for (int x = 0; x < m && lam_id; ++x)
            lam_id = b.lambda(a, x) == x;
        CHECK(lam_id == static_cast<bool>(soc.member[a]));
    }
    // Sylow subgroups of (B,+) are left ideals
    auto add_order = [&](int a) {
        int x = a, k = 1;
        while (x != b.zero()) {
            x = b.add(x, a);
            ++k;
        }
        return k;
    };
    for (int q = 2; q <= m; ++q) {
        bool prime = q >= 2;
        for (int d = 2; d * d <= q && prime; ++d)
            prime = q % d != 0;
        if (!prime || m % q != 0)
            continue;
        std::vector<int> sylow;
        for (int a = 0; a < m; ++a) {
            int k = add_order(a);
            while (k % q == 0)
                k /= q;
            if (k == 1)
                sylow.push_back(a);
        }
        BraceSubset s = classify_subset(b, sylow);
        CHECK(s.left_ideal);
    }
}

} // namespace

TEST_CASE("trivial braces") {
    for (const char* d : {"Z2", "Z3", "Z2xZ2", "Z4"}) {
        FiniteBrace b = trivial_brace(FinAbGroup::parse(d));
        CHECK(b.is_trivial());
        CHECK(socle(b).members.size() == static_cast<std::size_t>(b.size()));
        for (int a = 0; a < b.size(); ++a)
            for (int x = 0; x < b.size(); ++x)
                CHECK(b.lambda(a, x) == x);
        check_brace_laws(b);
    }
}

TEST_CASE("table validation catches broken input") {
    // neutral elements must coincide: additive neutral 0, multiplicative 1
    std::vector<std::vector<int>> add{{0, 1}, {1, 0}};
    std::vector<std::vector<int>> relabeled_mul{{1, 0}, {0, 1}};
    CHECK_THROWS_AS(FiniteBrace::make(add, relabeled_mul), CheckError);

    // non-associative multiplication
    std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    std::vector<std::vector<int>> z3{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    CHECK_THROWS_AS(FiniteBrace::make(z3, bad), CheckError);
    CHECK_NOTHROW(FiniteBrace::make(z3, z3));
}

TEST_CASE("mixed additive and multiplicative structures decided by check") {
    // additive Klein group, multiplicative Z4 on the same carrier: the
    // engine must agree with a direct scan of the brace law.
    std::vector<std::vector<int>> xor4(4, std::vector<int>(4));
    std::vector<std::vector<int>> mod4(4, std::vector<int>(4));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            xor4[x][y] = x ^ y;
            mod4[x][y] = (x + y) % 4;
        }
    bool law_holds = true;
    for (int a = 0; a < 4 && law_holds; ++a)
        for (int x = 0; x < 4 && law_holds; ++x)
            for (int y = 0; y < 4 && law_holds; ++y)
                law_holds = (mod4[a][xor4[x][y]] ^ a) ==
                            (xor4[mod4[a][x]][mod4[a][y]]);
    bool make_ok = true;
    try {
        FiniteBrace b = FiniteBrace::make(xor4, mod4);
        check_brace_laws(b);
    } catch (const CheckError&) {
        make_ok = false;
    }
    CHECK(make_ok == law_holds);
}

TEST_CASE("socle and ideals of small braces") {
    FiniteBrace z4 = trivial_brace(FinAbGroup::parse("Z4"));
    BraceSubset i2 = ideal_generated(z4, 2);
    CHECK(i2.members == std::vector<int>{0, 2});
    CHECK(ideal_generated(z4, 0).members == std::vector<int>{0});
    CHECK_FALSE(is_simple_brace(z4));

    FiniteBrace z3 = trivial_brace(FinAbGroup::parse("Z3"));
    CHECK(is_simple_brace(z3)); // prime order, trivial structure

    auto ideals = enumerate_ideals(z4);
    CHECK(ideals.size() == 3); // {0}, {0,2}, all
}

TEST_CASE("quotient braces") {
    FiniteBrace z4 = trivial_brace(FinAbGroup::parse("Z4"));
    QuotientBrace q = quotient_brace(z4, ideal_generated(z4, 2));
    CHECK(q.brace.size() == 2);
    CHECK(q.brace.is_trivial());
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            CHECK(q.projection[z4.add(x, y)] ==
                  q.brace.add(q.projection[x], q.projection[y]));
            CHECK(q.projection[z4.mul(x, y)] ==
                  q.brace.mul(q.projection[x], q.projection[y]));
        }

    QuotientBrace whole = quotient_brace(z4, ideal_generated(z4, 1));
    CHECK(whole.brace.size() == 1);
    QuotientBrace same = quotient_brace(z4, ideal_generated(z4, 0));
    CHECK(same.brace.size() == 4);
    REQUIRE(find_brace_isomorphism(same.brace, z4).has_value());

    BraceSubset not_ideal;
    not_ideal.member.assign(4, 0);
    not_ideal.members = {0, 1};
    CHECK_THROWS_AS(quotient_brace(z4, not_ideal), CheckError);
}

TEST_CASE("semidirect product of trivial braces") {
    FinAbGroup a = FinAbGroup::parse("Z3");
    FinAbGroup t = FinAbGroup::parse("Z2");
    std::vector<GroupAut> act{GroupAut::identity(a),
                              GroupAut::from_matrix(a, {{2}})};
    FiniteBrace b = semidirect_trivial(a, t, act);
    CHECK(b.size() == 6);
    CHECK_FALSE(b.is_trivial());
    check_brace_laws(b);

    std::vector<GroupAut> triv{GroupAut::identity(a), GroupAut::identity(a)};
    CHECK(semidirect_trivial(a, t, triv).is_trivial());

    // action must be a homomorphism: an order-4 map on Z5 over Z2 is not
    FinAbGroup z5 = FinAbGroup::parse("Z5");
    std::vector<GroupAut> bad{GroupAut::identity(z5),
                              GroupAut::from_matrix(z5, {{2}})};
    CHECK_THROWS_AS(semidirect_trivial(z5, t, bad), CheckError);
}

TEST_CASE("asymmetric product degenerates to the direct product") {
    FiniteBrace left = trivial_brace(FinAbGroup::parse("Z2"));
    FiniteBrace right = trivial_brace(FinAbGroup::parse("Z3"));
    std::vector<std::vector<int>> action(3, std::vector<int>{0, 1});
    std::vector<std::vector<int>> form(2, std::vector<int>(2, 0));
    FiniteBrace b = asymmetric_product(left, right, action, form);
    CHECK(b.size() == 6);
    CHECK(b.is_trivial());
    for (int f = 0; f < 2; ++f)
        for (int a = 0; a < 3; ++a)
            for (int h = 0; h < 2; ++h)
                for (int c = 0; c < 3; ++c) {
                    int x = f * 3 + a, y = h * 3 + c;
                    CHECK(b.add(x, y) == (left.add(f, h) * 3 + right.add(a, c)));
                    CHECK(b.mul(x, y) == (left.mul(f, h) * 3 + right.mul(a, c)));
                }
    check_brace_laws(b);
}

TEST_CASE("asymmetric product rejects incompatible data") {
    FiniteBrace left = trivial_brace(FinAbGroup::parse("Z2xZ2"));
    FiniteBrace right = trivial_brace(FinAbGroup::parse("Z2"));
    std::vector<std::vector<int>> action(2);
    action[0] = {0, 1, 2, 3};
    action[1] = {0, 2, 1, 3}; // swap the two generators; an automorphism
    // bilinear form (x,y) -> x_0 * y_0, not invariant under the swap
    std::vector<std::vector<int>> form(4, std::vector<int>(4, 0));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            form[x][y] = (x >> 1) & (y >> 1);
    CHECK_THROWS_AS(asymmetric_product(left, right, action, form), CheckError);
}

TEST_CASE("brace reconstructed from a solution") {
    SolutionBrace triv = brace_from_solution(cyclic_solution(1));
    CHECK(triv.brace.size() == 1);

    SolutionBrace cyc = brace_from_solution(cyclic_solution(4));
    CHECK(cyc.brace.size() == 4);
    CHECK(cyc.brace.is_trivial());
    REQUIRE(find_brace_isomorphism(cyc.brace, trivial_brace(FinAbGroup::parse("Z4")))
                .has_value());

    SolutionBrace fp = brace_from_solution(four_point());
    CHECK(fp.brace.size() == 8);
    CHECK(socle(fp.brace).members.size() == 1);
    check_brace_laws(fp.brace);

    // compatibility with the solution action for every group element
    const Solution s = four_point();
    for (int g = 0; g < fp.group.size(); ++g)
        for (int y = 0; y < s.size(); ++y)
            CHECK(fp.brace.lambda(g, fp.sigma_element[y]) ==
                  fp.sigma_element[fp.group.apply(g, y)]);
}

TEST_CASE("reconstructed addition is independent of the word choice") {
    // every factorization h = e . sigma_y must reproduce the same sums
    for (const Solution& s : {four_point(), cyclic_solution(4)}) {
        SolutionBrace sb = brace_from_solution(s);
        const PermGroup& g = sb.group;
        const FiniteBrace& b = sb.brace;
        for (int h = 0; h < g.size(); ++h) {
            for (int e = 0; e < g.size(); ++e)
                for (int y = 0; y < s.size(); ++y) {
                    if (g.compose(e, g.sigma_element(y)) != h)
                        continue;
                    int z = g.apply(e, y);
                    for (int a = 0; a < g.size(); ++a) {
                        int u = b.add(a, e);
                        int expect =
                            b.mul(u, g.sigma_element(g.apply(g.inverse(u), z)));
                        CHECK(b.add(a, h) == expect);
                    }
                }
        }
    }
}

TEST_CASE("brace isomorphism search") {
    FiniteBrace z4 = trivial_brace(FinAbGroup::parse("Z4"));
    FiniteBrace v4 = trivial_brace(FinAbGroup::parse("Z2xZ2"));
    CHECK(find_brace_isomorphism(z4, z4).has_value());
    CHECK_FALSE(find_brace_isomorphism(z4, v4).has_value());

    // conjugate a nontrivial brace by a permutation and find the map back
    FinAbGroup a = FinAbGroup::parse("Z3");
    FinAbGroup t = FinAbGroup::parse("Z2");
    std::vector<GroupAut> act{GroupAut::identity(a),
                              GroupAut::from_matrix(a, {{2}})};
    FiniteBrace b = semidirect_trivial(a, t, act);
    std::vector<int> perm{3, 0, 4, 1, 5, 2};
    std::vector<std::vector<int>> add(6, std::vector<int>(6));
    std::vector<std::vector<int>> mul(6, std::vector<int>(6));
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            add[perm[x]][perm[y]] = perm[b.add(x, y)];
            mul[perm[x]][perm[y]] = perm[b.mul(x, y)];
        }
    FiniteBrace c = FiniteBrace::make(add, mul);
    auto f = find_brace_isomorphism(b, c);
    REQUIRE(f.has_value());
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            CHECK((*f)[b.add(x, y)] == c.add((*f)[x], (*f)[y]));
            CHECK((*f)[b.mul(x, y)] == c.mul((*f)[x], (*f)[y]));
        }
}

TEST_CASE("restricted solutions require lambda closure") {
    FiniteBrace z4 = trivial_brace(FinAbGroup::parse("Z4"));
    std::vector<int> pts{0, 1, 2, 3};
    Solution s = restricted_solution(z4, pts);
    CHECK(s.size() == 4); // trivial brace gives the trivial flip
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            CHECK(s.sigma(x, y) == y);

    // any pair that the lambda action pushes outside itself must be rejected
    SolutionBrace fp = brace_from_solution(four_point());
    const FiniteBrace& b = fp.brace;
    bool found = false;
    for (int x = 0; x < b.size() && !found; ++x)
        for (int y = 0; y < b.size() && !found; ++y) {
            if (x == y)
                continue;
            int ia = b.lambda(x, x), ib = b.lambda(x, y), ic = b.lambda(y, x),
                id = b.lambda(y, y);
            auto outside = [&](int v) { return v != x && v != y; };
            if (outside(ia) || outside(ib) || outside(ic) || outside(id)) {
                std::vector<int> bad{x, y};
                CHECK_THROWS_AS(restricted_solution(b, bad), CheckError);
                found = true;
            }
        }
    CHECK(found);
}
