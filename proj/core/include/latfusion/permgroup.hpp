#pragma once

#include <cstdint>
#include <vector>

#include "latfusion/f2algebra.hpp"
#include "latfusion/numeric.hpp"

namespace latfusion {

// Permutation of 0..degree-1 as an image table; degree capped at 4096 so
// transversals can be stored densely.
using Perm = std::vector<uint16_t>;

Perm perm_identity(int degree);
bool perm_is_identity(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // x ↦ a[b[x]]
Perm perm_inverse(const Perm& a);

// Stabilizer chain from a deterministic Schreier-Sims run over the full
// point sequence 0 < 1 < ... < degree-1; only points with a nontrivial
// fundamental orbit are materialized. Immutable once built.
struct PermGroup {
    int degree = 0;
    std::vector<Perm> generators;  // the input list, identities dropped

    struct Level {
        int point = 0;
        std::vector<Perm> strong;      // strong generators first moving `point`
        std::vector<int> orbit;        // fundamental orbit, discovery order
        std::vector<int> where;        // dense point → orbit position, -1 outside
        std::vector<Perm> trans;       // trans[i] maps point to orbit[i]
        std::vector<Perm> trans_inv;
    };
    std::vector<Level> chain;  // base points strictly increasing

    Int order;

    std::vector<int> base() const;  // points with orbit length > 1
    bool contains(const Perm& p) const;
};

// Deterministic given the generator list order. degree may be passed
// explicitly for an empty generator list.
PermGroup schreier_sims(const std::vector<Perm>& gens, int degree = -1);

// One transvection x ↦ x + b(x,v)v per anisotropic v, acting on all 2^dim
// vectors. Requires a nondegenerate form and 2^dim ≤ 4096; every output is
// re-checked to preserve q. These generate the full orthogonal group except
// in the dim-4 plus case, where they give an index-2 subgroup.
std::vector<Perm> transvection_generators(const F2QuadSpace& q);

// Orbit sizes of the natural action, ascending.
std::vector<long long> orbit_sizes(const PermGroup& g);

// |G| / |orbit(point)|; the division is checked to be exact.
Int stabilizer_order(const PermGroup& g, int point);

}  // namespace latfusion
