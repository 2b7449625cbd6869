#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "latfusion/modcat.hpp"
#include "latfusion/permgroup.hpp"

using namespace latfusion;

TEST_CASE("fusion space layout") {
    for (const char* name : {"sqrt2E8", "BW16"}) {
        FusionSpace s = build_fusion_space(builtin(name));
        CHECK(s.m == 8);
        CHECK(s.dim == 10);
        CHECK(s.degree() == 1024);
        CHECK(s.cosets.size() == 256);
        CHECK(s.cosets[0].is_zero());
        CHECK(s.has_quad);
        for (uint32_t v = 0; v < s.degree(); ++v) {
            ModuleLabel l = s.label_at(v);
            CHECK(s.index_of(l) == v);
        }
    }
    CHECK_THROWS_AS(build_fusion_space(builtin("sqrt2D4")), std::invalid_argument);
    CHECK_THROWS_AS(build_fusion_space(builtin("A2")), std::invalid_argument);
}

TEST_CASE("fusion rules are xor in index coordinates") {
    FusionSpace s = build_fusion_space(builtin("sqrt2E8"));
    std::mt19937 rng(7);
    std::uniform_int_distribution<uint32_t> dist(0, s.degree() - 1);
    for (int trial = 0; trial < 10000; ++trial) {
        uint32_t x = dist(rng), y = dist(rng);
        ModuleLabel fz = fuse(s.label_at(x), s.label_at(y));
        CHECK(s.index_of(fz) == (x ^ y));
    }
    // the group law comes for free once fusion is xor: identity, self-inverse
    ModuleLabel one = s.label_at(0);
    CHECK(one.kind == LabelKind::untwisted_signed);
    CHECK(one.sign == +1);
    CHECK(one.coset.is_zero());
    for (uint32_t v : {1u, 2u, 3u, 77u, 1023u}) {
        CHECK(s.index_of(fuse(s.label_at(v), one)) == v);
        CHECK(s.index_of(fuse(s.label_at(v), s.label_at(v))) == 0);
    }
}

TEST_CASE("fusion of twisted classes carries the nu signs") {
    FusionSpace s = build_fusion_space(builtin("sqrt2E8"));
    // [chi_0]^+ x [chi_0]^+ = [0]^(nu(0)^2) = [0]^+
    ModuleLabel chi0 = label_twisted(s.lattice.zero_coset(), +1);
    ModuleLabel sq = fuse(chi0, chi0);
    CHECK(sq.kind == LabelKind::untwisted_signed);
    CHECK(sq.sign == +1);
    CHECK(sq.coset.is_zero());
    // an odd-norm coset feeds its nu into the product sign
    const Coset* odd = nullptr;
    for (const Coset& c : s.cosets)
        if (nu(c) == -1) {
            odd = &c;
            break;
        }
    REQUIRE(odd != nullptr);
    ModuleLabel prod = fuse(label_twisted(*odd, +1), chi0);
    CHECK(prod.kind == LabelKind::untwisted_signed);
    CHECK(prod.sign == nu(*odd) * nu(s.lattice.zero_coset()));
    CHECK(coset_eq(prod.coset, *odd));
    // mixed case: the twisted side's nu and the sum's nu both enter
    ModuleLabel mixed = fuse(label_signed(*odd, +1), chi0);
    CHECK(mixed.kind == LabelKind::twisted_signed);
    CHECK(mixed.sign == nu(s.lattice.zero_coset()) * nu(*odd));
    Lattice a2 = builtin("A2");
    ModuleLabel mu = label_pair(a2.coset(a2.dual_basis()[0]));
    CHECK_THROWS_AS(fuse(mu, mu), std::invalid_argument);
}

TEST_CASE("quadratic form on the fusion space") {
    for (const char* name : {"sqrt2E8", "BW16"}) {
        FusionSpace s = build_fusion_space(builtin(name));
        REQUIRE(s.has_quad);
        CHECK(is_nondegenerate(s.quad));
        CHECK(arf_type(s.quad) == +1);
        CHECK(count_isotropic(s.quad) == 527);
        // qform agrees with the table used to build the space
        for (uint32_t v = 0; v < s.degree(); ++v)
            CHECK(qform(s.label_at(v)) == s.quad.q(v));
        // [0]^- is isotropic, so the orbit can reach it
        CHECK(qform(s.label_at(1)) == 0);
    }
    // twisted values depend on the rank mod 16
    FusionSpace e8 = build_fusion_space(builtin("sqrt2E8"));
    CHECK(qform(label_twisted(e8.lattice.zero_coset(), +1)) == 1);
    CHECK(qform(label_twisted(e8.lattice.zero_coset(), -1)) == 0);
    FusionSpace bw = build_fusion_space(builtin("BW16"));
    CHECK(qform(label_twisted(bw.lattice.zero_coset(), +1)) == 0);
    CHECK(qform(label_twisted(bw.lattice.zero_coset(), -1)) == 1);
}

TEST_CASE("qform parity matches the character exponents") {
    FusionSpace s = build_fusion_space(builtin("sqrt2E8"));
    std::mt19937 rng(11);
    std::uniform_int_distribution<uint32_t> dist(0, s.degree() - 1);
    for (int trial = 0; trial < 12; ++trial) {
        uint32_t v = dist(rng);
        QSeries d = graded_dim(s.label_at(v), Rat(3));
        bool half = false;
        for (const auto& [e, c] : d.terms())
            if (!is_integer(e)) half = true;
        CHECK(half == (s.quad.q(v) == 1));
    }
}

TEST_CASE("orbit sizes across the root systems") {
    CHECK(orbit_QL(builtin("sqrt2A1")).size() == 1);
    CHECK(orbit_QL(builtin("sqrt2A2")).size() == 1);
    CHECK(orbit_QL(builtin("sqrt2A3")).size() == 3);
    CHECK(orbit_QL(builtin("sqrt2A4")).size() == 1);
    CHECK(orbit_QL(builtin("sqrt2D4")).size() == 7);
    CHECK(orbit_QL(builtin("sqrt2D5")).size() == 3);
    CHECK(orbit_QL(builtin("sqrt2D6")).size() == 3);
    CHECK(orbit_QL(builtin("sqrt2E6")).size() == 1);
    CHECK(orbit_QL(builtin("sqrt2E7")).size() == 1);
    CHECK(orbit_QL(builtin("sqrt2E8")).size() == 527);
    CHECK(orbit_QL(builtin("BW16")).size() == 527);
    CHECK(orbit_QL(builtin("unimodular24")).size() == 1);
    CHECK_THROWS_AS(orbit_QL(builtin("E8")), std::invalid_argument);  // roots
    CHECK_THROWS_AS(orbit_QL(builtin("A3")), std::invalid_argument);
}

TEST_CASE("exceptional orbit is the isotropic set") {
    FusionSpace s = build_fusion_space(builtin("sqrt2E8"));
    std::set<uint32_t> orbit_idx;
    for (const ModuleLabel& l : orbit_QL(s.lattice)) orbit_idx.insert(s.index_of(l));
    CHECK(orbit_idx.size() == 527);
    for (uint32_t v = 1; v < s.degree(); ++v)
        CHECK(orbit_idx.count(v) == size_t(s.quad.q(v) == 0));
    CHECK(orbit_idx.count(0) == 0);
}

TEST_CASE("orbit members share the character of the minus class") {
    for (const char* name : {"sqrt2E8", "BW16"}) {
        Lattice L = builtin(name);
        QSeries ref = graded_dim(label_signed(L.zero_coset(), -1), Rat(3));
        for (const ModuleLabel& l : orbit_QL(L))
            CHECK(graded_dim(l, Rat(3)) == ref);
    }
}

TEST_CASE("frame subspace U_L") {
    ULSubspace a3 = subspace_UL(builtin("sqrt2A3"));
    CHECK(a3.dim == 1);
    CHECK(a3.cosets.size() == 2);
    CHECK(a3.cosets[0].is_zero());
    ULSubspace d4 = subspace_UL(builtin("sqrt2D4"));
    CHECK(d4.dim == 2);
    ULSubspace e6 = subspace_UL(builtin("sqrt2E6"));
    CHECK(e6.dim == 0);
    // |Q| = 2|U| - 1
    for (const char* name : {"sqrt2A3", "sqrt2D4", "sqrt2E6", "sqrt2D5"}) {
        Lattice L = builtin(name);
        CHECK(orbit_QL(L).size() == 2 * subspace_UL(L).cosets.size() - 1);
    }
    CHECK_THROWS_AS(subspace_UL(builtin("sqrt2E8")), std::invalid_argument);
}

TEST_CASE("fbeta label action") {
    for (const char* name : {"sqrt2E8", "BW16"}) {
        FusionSpace s = build_fusion_space(builtin(name));
        std::vector<Perm> gens;
        for (const Vec& beta : s.lattice.dual_basis())
            gens.push_back(label_action_fbeta(s, beta));
        // each generator preserves fusion and the quadratic form
        std::mt19937 rng(23);
        std::uniform_int_distribution<uint32_t> dist(0, s.degree() - 1);
        for (const Perm& g : gens) {
            CHECK(g[0] == 0);
            for (int trial = 0; trial < 1000; ++trial) {
                uint32_t x = dist(rng), y = dist(rng);
                CHECK(g[x ^ y] == (g[x] ^ g[y]));
                CHECK(s.quad.q(g[x]) == s.quad.q(x));
            }
        }
        // the lattice part acts trivially
        Perm id = label_action_fbeta(s, s.lattice.basis()[0]);
        CHECK(perm_is_identity(id));
        CHECK(schreier_sims(gens).order == 256);
    }
}

TEST_CASE("sigma images from the construction data") {
    Lattice L = builtin("sqrt2E8");
    auto d = detect_construction_b(L);
    REQUIRE(d.has_value());
    FusionSpace s = build_fusion_space(L);
    SigmaPartial sp = label_action_sigma_partial(s, d->frame, d->code);
    REQUIRE(sp.images.size() == 2);
    const auto& [from0, to0] = sp.images[0];
    CHECK(label_eq(from0, label_signed(L.zero_coset(), -1)));
    CHECK(to0.kind == LabelKind::untwisted_signed);
    CHECK(to0.sign == +1);
    CHECK(!to0.coset.is_zero());
    // the image class stays inside the isotropic orbit
    CHECK(s.quad.q(s.index_of(to0)) == 0);
    const auto& [from1, to1] = sp.images[1];
    CHECK(label_eq(from1, label_signed(to0.coset, -1)));
    CHECK(label_eq(to1, from1));
}

TEST_CASE("label text round trip") {
    FusionSpace s = build_fusion_space(builtin("sqrt2E8"));
    for (uint32_t v = 0; v < s.degree(); ++v) {
        ModuleLabel l = s.label_at(v);
        ModuleLabel back = parse_label(s, label_str(l, s));
        CHECK(label_eq(l, back));
    }
    CHECK_THROWS_AS(parse_label(s, "lam:999:+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_label(s, "nonsense"), std::invalid_argument);
}
