#pragma once

#include <optional>
#include <vector>

#include "latfusion/f2algebra.hpp"
#include "latfusion/lattice.hpp"

namespace latfusion {

// n pairwise orthogonal norm-2 vectors, <α_i,α_j> = 2δ_ij.
struct Frame {
    std::vector<Vec> vectors;
};

struct LbResult {
    Lattice lattice;
    Frame frame;
};

// Construction B: the lattice spanned by α_i ± α_j (i, j ∈ Ω_n, i = j
// included) and ½α_c for generators c of C, with the standard frame
// α_i = e_i under metric scale 2. Requires a doubly even code.
LbResult lb_from_code(const BinaryCode& c);

// L_A(C) = L_B(C) + Zα_1. Requires a doubly even code.
Lattice la_from_code(const BinaryCode& c);

struct PcobReport {
    bool det_ok = false;      // det L_B(C) = 2^(n - 2 dim C + 2)
    bool dual_ok = false;     // L_B(C)° = L_B(C^⊥) + Zα_1 + Z(α_Ω/4)
    bool minnorm_ok = false;  // min weight of C > 4 implies min norm 4
    bool all() const { return det_ok && dual_ok && minnorm_ok; }
};

// Structural checks on L_B(C) for a doubly even C of length <= 24. The dual
// comparison uses the span definition of L_B for C^⊥ (which need not be
// doubly even), mutual membership of generators, and determinant equality.
PcobReport verify_pcob(const BinaryCode& c);

struct BDetect {
    Frame frame;      // sign-normalized: all construction generators lie in L
    BinaryCode code;
    Coset lambda;     // two-torsion coset containing the frame vectors
};

// Search for a Construction-B structure on an even rootless lattice: a
// two-torsion coset λ+L whose 2n norm-2 vectors form an A1^n frame, with a
// binary code and frame signs that reproduce L exactly. Candidates are tried
// in lexicographic order of the canonical coset representative; returns
// nullopt when none works. Throws if L is not even or has roots.
std::optional<BDetect> detect_construction_b(const Lattice& L);

// Same, restricted to one two-torsion coset of L.
std::optional<BDetect> detect_construction_b_at(const Lattice& L, const Coset& lambda);

}  // namespace latfusion
