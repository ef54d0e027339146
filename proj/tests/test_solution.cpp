#include "doctest.h"

#include <algorithm>
#include <vector>

#include "ybx/permgroup.hpp"
#include "ybx/solution.hpp"

using namespace ybx;

namespace {

Solution trivial_flip(int n) {
    std::vector<std::vector<int>> sigma(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            sigma[x][y] = y;
    return Solution::make(sigma);
}

Solution cyclic_solution(int n) {
    std::vector<std::vector<int>> sigma(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            sigma[x][y] = (y + 1) % n;
    return Solution::make(sigma);
}

// The 4-point instance, written out by hand from the pair construction on
// Z2 with the twist id and coefficients 0->0, 1->1.
Solution four_point() {
    return Solution::make({{0, 1, 3, 2}, {3, 2, 0, 1}, {1, 0, 2, 3}, {2, 3, 1, 0}});
}

// ---- referee: the full congruence lattice by partition enumeration ----

// All partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n, 0), mx(n, 0);
    while (true) {
        out.push_back(a);
        int i = n - 1;
        for (; i > 0; --i) {
            if (a[i] <= mx[i - 1]) {
                ++a[i];
                mx[i] = std::max(mx[i], a[i]);
                for (int j = i + 1; j < n; ++j) {
                    a[j] = 0;
                    mx[j] = mx[i];
                }
                break;
            }
        }
        if (i == 0)
            break;
    }
    return out;
}

bool partition_compatible(const Solution& s, const std::vector<int>& block_of) {
    int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int x2 = 0; x2 < n; ++x2) {
            if (block_of[x] != block_of[x2])
                continue;
            for (int y = 0; y < n; ++y)
                for (int y2 = 0; y2 < n; ++y2) {
                    if (block_of[y] != block_of[y2])
                        continue;
                    if (block_of[s.sigma(x, y)] != block_of[s.sigma(x2, y2)])
                        return false;
                }
        }
    return true;
}

std::vector<int> canonical_blocks(const std::vector<int>& block_of) {
    std::vector<int> map(block_of.size(), -1);
    std::vector<int> out(block_of.size());
    int next = 0;
    for (std::size_t i = 0; i < block_of.size(); ++i) {
        if (map[block_of[i]] == -1)
            map[block_of[i]] = next++;
        out[i] = map[block_of[i]];
    }
    return out;
}

std::vector<std::vector<int>> congruence_lattice(const Solution& s) {
    std::vector<std::vector<int>> out;
    for (const auto& p : all_partitions(s.size()))
        if (partition_compatible(s, p))
            out.push_back(canonical_blocks(p));
    return out;
}

} // namespace

TEST_CASE("validation basics") {
    Solution flip = trivial_flip(3);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            CHECK(flip.apply_r(x, y) == std::pair<int, int>{y, x});

    CHECK_THROWS_AS(Solution::make({{0, 0}, {0, 1}}), CheckError);
    CHECK_THROWS_AS(Solution::make({{0, 1}, {1, 5}}), CheckError);
    CHECK_THROWS_AS(Solution::make({{0, 1}, {0, 1}, {0, 1}}), CheckError);

    Solution fp = four_point();
    CHECK(fp.size() == 4);
    CHECK(verify_sigma_condition(fp));
    CHECK(verify_sigma_condition(flip));
    CHECK(verify_sigma_condition(cyclic_solution(5)));
}

TEST_CASE("gamma consistency") {
    for (const Solution& s : {four_point(), cyclic_solution(4), trivial_flip(3)})
        for (int x = 0; x < s.size(); ++x)
            for (int y = 0; y < s.size(); ++y)
                CHECK(s.gamma(y, x) == s.sigma_inv(s.sigma(x, y), x));
}

TEST_CASE("permutation group closure") {
    CHECK(permutation_group(trivial_flip(4)).size() == 1);
    CHECK(permutation_group(cyclic_solution(5)).size() == 5);
    PermGroup g = permutation_group(four_point());
    CHECK(g.size() == 8);
    // elements close under composition and inversion
    for (int a = 0; a < g.size(); ++a) {
        CHECK(g.compose(a, g.inverse(a)) == g.identity());
        for (int b = 0; b < g.size(); ++b)
            CHECK(g.compose(a, b) >= 0);
    }
    CHECK_THROWS_AS(permutation_group(four_point(), 3), CapError);
}

TEST_CASE("orbits and indecomposability") {
    CHECK_FALSE(is_indecomposable(trivial_flip(2)));
    CHECK(is_indecomposable(cyclic_solution(4)));
    CHECK(is_indecomposable(four_point()));
    OrbitInfo oi = solution_orbits(trivial_flip(3));
    CHECK(oi.orbits.size() == 3);
}

TEST_CASE("retract and multipermutation level") {
    CHECK(retract(cyclic_solution(4)).solution.size() == 1);
    CHECK(retract(trivial_flip(3)).solution.size() == 1);
    CHECK(retract(four_point()).solution.size() == 4);
    CHECK(is_irretractable(four_point()));
    CHECK_FALSE(is_irretractable(cyclic_solution(4)));

    CHECK(multipermutation_level(trivial_flip(1)) == 0);
    CHECK(multipermutation_level(cyclic_solution(4)) == 1);
    CHECK(multipermutation_level(trivial_flip(3)) == 1);
    CHECK_FALSE(multipermutation_level(four_point()).has_value());
}

TEST_CASE("congruence closure") {
    Solution flip = trivial_flip(3);
    std::vector<std::pair<int, int>> seed{{0, 1}};
    Congruence c = congruence_generated(flip, seed);
    CHECK(c.block_count() == 2);
    CHECK(c.same(0, 1));
    CHECK_FALSE(c.same(0, 2));

    Congruence none = congruence_generated(flip, {});
    CHECK(none.is_discrete());

    Solution fp = four_point();
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) {
            std::vector<std::pair<int, int>> s{{x, y}};
            CHECK(congruence_generated(fp, s).is_full());
        }
}

TEST_CASE("quotient solutions") {
    Solution flip = trivial_flip(3);
    std::vector<std::pair<int, int>> seed{{0, 1}};
    Congruence c = congruence_generated(flip, seed);
    QuotientSolutionResult q = quotient_solution(flip, c);
    CHECK(q.solution.size() == 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            CHECK(q.solution.sigma(x, y) == y); // still a flip

    QuotientSolutionResult qd = quotient_solution(flip, Congruence::discrete(3));
    CHECK(qd.solution.size() == 3);

    Solution fp = four_point();
    std::vector<std::pair<int, int>> s{{0, 1}};
    QuotientSolutionResult qf = quotient_solution(fp, congruence_generated(fp, s));
    CHECK(qf.solution.size() == 1);
}

TEST_CASE("simplicity by principal congruences") {
    CHECK(is_simple_solution(four_point()).simple);
    CHECK(is_simple_solution(trivial_flip(2)).simple);
    SimplicityResult r = is_simple_solution(cyclic_solution(4));
    CHECK_FALSE(r.simple);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->block_count() > 1);
    CHECK(r.witness->block_count() < 4);
    CHECK_THROWS_AS(is_simple_solution(trivial_flip(1)), CheckError);
}

TEST_CASE("congruence machinery against the full partition lattice") {
    // Every sigma-compatible partition is found by closure, closures are
    // minimal, and simplicity means exactly two congruences.
    for (const Solution& s :
         {four_point(), trivial_flip(3), cyclic_solution(4), cyclic_solution(5)}) {
        auto lattice = congruence_lattice(s);
        int n = s.size();

        // quotient by every congruence validates
        for (const auto& blocks : lattice) {
            // rebuild as a Congruence through closure of in-block pairs
            std::vector<std::pair<int, int>> pairs;
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    if (blocks[x] == blocks[y])
                        pairs.emplace_back(x, y);
            Congruence c = congruence_generated(s, pairs);
            // the closure of all in-block pairs is the partition itself
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    CHECK(c.same(x, y) == (blocks[x] == blocks[y]));
            CHECK_NOTHROW(quotient_solution(s, c));
        }

        // principal closures are the least congruences containing the pair
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                std::vector<std::pair<int, int>> seed{{x, y}};
                Congruence c = congruence_generated(s, seed);
                // oracle: intersect all lattice members containing (x,y)
                std::vector<int> meet(n * n, 1);
                for (const auto& blocks : lattice) {
                    if (blocks[x] != blocks[y])
                        continue;
                    for (int u = 0; u < n; ++u)
                        for (int v = 0; v < n; ++v)
                            if (blocks[u] != blocks[v])
                                meet[u * n + v] = 0;
                }
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v)
                        CHECK(c.same(u, v) == (meet[u * n + v] == 1));
            }

        bool referee_simple = lattice.size() == 2;
        CHECK(is_simple_solution(s).simple == referee_simple);
    }
}

TEST_CASE("solution isomorphism search") {
    Solution fp = four_point();
    auto self = find_solution_isomorphism(fp, fp);
    REQUIRE(self.has_value());

    CHECK_FALSE(find_solution_isomorphism(trivial_flip(3), cyclic_solution(3))
                    .has_value());

    // relabeled copy: conjugate the table by a permutation
    std::vector<int> perm{2, 0, 3, 1};
    std::vector<std::vector<int>> sigma(4, std::vector<int>(4));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            sigma[perm[x]][perm[y]] = perm[fp.sigma(x, y)];
    Solution relabeled = Solution::make(sigma);
    auto f = find_solution_isomorphism(fp, relabeled);
    REQUIRE(f.has_value());
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            CHECK((*f)[fp.sigma(x, y)] == relabeled.sigma((*f)[x], (*f)[y]));
}
