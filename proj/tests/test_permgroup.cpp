#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "latfusion/f2algebra.hpp"
#include "latfusion/permgroup.hpp"

using namespace latfusion;

namespace {

Perm cycle(int degree, std::vector<int> pts) {
    Perm p = perm_identity(degree);
    for (size_t i = 0; i < pts.size(); ++i)
        p[pts[i]] = static_cast<uint16_t>(pts[(i + 1) % pts.size()]);
    return p;
}

Perm random_word(const std::vector<Perm>& gens, std::mt19937& rng, int len) {
    Perm w = perm_identity(static_cast<int>(gens[0].size()));
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < len; ++i) w = perm_compose(w, gens[pick(rng)]);
    return w;
}

}  // namespace

TEST_CASE("permutation basics") {
    Perm a = cycle(5, {0, 1, 2});
    Perm b = cycle(5, {2, 3});
    Perm ab = perm_compose(a, b);  // apply b first
    CHECK(ab[2] == 3);
    CHECK(ab[3] == 0);
    CHECK(perm_is_identity(perm_compose(a, perm_inverse(a))));
    CHECK(perm_is_identity(perm_compose(perm_inverse(b), b)));
    CHECK(!perm_is_identity(a));
}

TEST_CASE("symmetric group from two generators") {
    std::vector<Perm> gens = {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})};
    PermGroup g = schreier_sims(gens);
    CHECK(g.order == 24);
    CHECK(g.degree == 4);
    // membership: every word is in, a 5-point cycle pattern cannot be
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) CHECK(g.contains(random_word(gens, rng, 12)));
    PermGroup a4 = schreier_sims({cycle(4, {0, 1, 2}), cycle(4, {1, 2, 3})});
    CHECK(a4.order == 12);
    CHECK(!a4.contains(cycle(4, {0, 1})));
    CHECK(a4.contains(perm_compose(cycle(4, {0, 1}), cycle(4, {2, 3}))));
}

TEST_CASE("trivial group") {
    PermGroup g = schreier_sims({}, 5);
    CHECK(g.order == 1);
    CHECK(g.degree == 5);
    CHECK(g.base().empty());
    CHECK(g.contains(perm_identity(5)));
    CHECK(!g.contains(cycle(5, {0, 1})));
    std::vector<long long> sizes = orbit_sizes(g);
    CHECK(sizes == std::vector<long long>(5, 1));
    CHECK_THROWS_AS(schreier_sims({}), std::invalid_argument);  // degree unknowable
}

TEST_CASE("orthogonal groups from transvections") {
    struct Row {
        int dim;
        int eps;
        size_t gens;
        long order;
        long index;  // of the transvection subgroup in the full group
    };
    // transvections generate the whole group except for the classical
    // dim-4 plus exception, where they give an index-2 subgroup
    const Row rows[] = {
        {2, +1, 1, 2, 1},    {2, -1, 3, 6, 1},      {4, +1, 6, 36, 2},
        {4, -1, 10, 120, 1}, {6, +1, 28, 40320, 1}, {6, -1, 36, 51840, 1},
    };
    for (const Row& r : rows) {
        CAPTURE(r.dim);
        CAPTURE(r.eps);
        F2QuadSpace q = standard_quad_space(r.dim, r.eps);
        std::vector<Perm> gens = transvection_generators(q);
        CHECK(gens.size() == r.gens);
        PermGroup g = schreier_sims(gens);
        CHECK(g.order == r.order);
        std::string spec = std::string("O") + (r.eps > 0 ? "+" : "-") + "_" +
                           std::to_string(r.dim) + "(2)";
        CHECK(g.order * r.index == group_order(spec));
    }
}

TEST_CASE("generator order does not depend on generator order") {
    F2QuadSpace q = standard_quad_space(6, -1);
    std::vector<Perm> gens = transvection_generators(q);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(schreier_sims(gens).order == 51840);
    }
}

TEST_CASE("dim 10 plus type") {
    F2QuadSpace q = standard_quad_space(10, +1);
    std::vector<Perm> gens = transvection_generators(q);
    CHECK(gens.size() == 496);
    PermGroup g = schreier_sims(gens);
    CHECK(g.order == group_order("O+_10(2)"));
    CHECK(g.order == Int("46998591897600"));
    // orbits: {0}, the 527 nonzero isotropic points, the 496 anisotropic ones
    std::vector<long long> sizes = orbit_sizes(g);
    REQUIRE(sizes.size() == 3);
    CHECK(sizes[0] == 1);
    CHECK(sizes[1] == 496);
    CHECK(sizes[2] == 527);
    std::vector<int> base = g.base();
    CHECK(std::is_sorted(base.begin(), base.end()));
    CHECK(std::adjacent_find(base.begin(), base.end()) == base.end());
    // the stabilizer of an isotropic point has index 527
    int iso = 0;
    for (int v = 1; v < 1024; ++v)
        if (q.q(v) == 0) {
            iso = v;
            break;
        }
    CHECK(stabilizer_order(g, iso) * 527 == g.order);
    CHECK(stabilizer_order(g, iso) == Int("89181388800"));
    CHECK(stabilizer_order(g, 0) == g.order);
    // membership on this degree still works
    std::mt19937 rng(29);
    for (int i = 0; i < 10; ++i) CHECK(g.contains(random_word(gens, rng, 20)));
    Perm odd = perm_identity(1024);
    std::swap(odd[0], odd[1]);  // moves 0, no orthogonal map does
    CHECK(!g.contains(odd));
}

TEST_CASE("transvection generator guards") {
    F2QuadSpace degenerate = quad_space_from_table(1, {0, 0});
    CHECK_THROWS_AS(transvection_generators(degenerate), std::invalid_argument);
    CHECK_THROWS_AS(transvection_generators(standard_quad_space(14, +1)), std::invalid_argument);
}

TEST_CASE("malformed permutations are rejected") {
    CHECK_THROWS_AS(schreier_sims({Perm{0, 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(schreier_sims({perm_identity(3), perm_identity(4)}), std::invalid_argument);
    PermGroup g = schreier_sims({cycle(4, {0, 1})});
    CHECK(!g.contains(perm_identity(5)));  // degree mismatch is just non-membership
}
