#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latfusion/constructions.hpp"
#include "latfusion/f2algebra.hpp"
#include "latfusion/lattice.hpp"
#include "latfusion/qseries.hpp"

namespace latfusion {

// Isomorphism classes of irreducible V_L^+ modules. Untwisted classes come
// from cosets of L in L°: a pair class [μ] when 2μ ∉ L (with [μ] = [-μ]), a
// signed class [λ]^± when 2λ ∈ L. Twisted classes [χ_λ]^± are indexed by the
// same cosets once 2L° ⊆ L.
enum class LabelKind { untwisted_pair, untwisted_signed, twisted_signed };

struct ModuleLabel {
    LabelKind kind;
    Coset coset;
    int sign = 0;  // +1 / -1; 0 for untwisted_pair
};

ModuleLabel label_pair(const Coset& mu);
ModuleLabel label_signed(const Coset& lam, int sign);
ModuleLabel label_twisted(const Coset& lam, int sign);

bool label_eq(const ModuleLabel& a, const ModuleLabel& b);

// + when the canonical representative has even (integral) norm, - when odd.
int nu(const Coset& lam);

struct VecKeyLess {
    bool operator()(const Vec& a, const Vec& b) const { return vec_less(a, b); }
};

// S_L for a 2-elementary totally even lattice of determinant 2^m: all
// 2^{m+2} labels, indexed so that fusion is bitwise XOR of indices. Index
// layout: bit 0 sign (adjusted by the norm parity on twisted labels, which
// is what linearizes the nu factors in the fusion rules), bit 1 twistedness,
// bits 2.. the two-torsion coset enumeration.
struct FusionSpace {
    Lattice lattice;
    std::vector<Coset> cosets;   // = two_torsion_cosets(L), all of L°/L here
    std::vector<int> parity;     // norm parity per coset
    int m = 0;
    int dim = 0;                 // m + 2
    bool has_quad = false;
    F2QuadSpace quad;            // q_L in index coordinates (rank ∈ 8Z only)

    uint32_t degree() const { return 1u << dim; }
    uint32_t index_of(const ModuleLabel& label) const;
    ModuleLabel label_at(uint32_t v) const;

    std::map<Vec, uint32_t, VecKeyLess> coset_index;  // canonical key → position
};

FusionSpace build_fusion_space(const Lattice& L);

// The three displayed fusion rules; defined (and only offered) over
// 2-elementary totally even lattices.
ModuleLabel fuse(const ModuleLabel& a, const ModuleLabel& b);

// q_L as an F2 value; requires rank(L) ∈ 8Z.
int qform(const ModuleLabel& label);

// Graded dimension of the module class (dispatches to the closed forms).
QSeries graded_dim(const ModuleLabel& label, const Rat& cutoff);

// The orbit of [0]^- in S_L under Aut(V_L^+), for even rootless L. For the
// two exceptional lattices (rank 8/16, determinant 2^8, 2-elementary totally
// even) this is every nonzero isotropic label; otherwise
// {[0]^-} ∪ {[λ]^± : λ ∈ L°∩(L/2), λ ∉ L, |(λ+L)_2| = 2n}.
std::vector<ModuleLabel> orbit_QL(const Lattice& L);

struct ULSubspace {
    int dim = 0;
    std::vector<Coset> cosets;  // zero coset first
};

// U_L = {λ+L : |(λ+L)_2| = 2n} ∪ {L} inside the 2-torsion of L°/L, with the
// closure check that makes it a subspace. Non-exceptional lattices only.
ULSubspace subspace_UL(const Lattice& L);

// Label action of f_β for β ∈ L°: flips the sign of [λ]^± when <β,2λ> is
// odd, fixes [μ], shifts twisted indices by β. Returned as a permutation of
// the FusionSpace indices.
std::vector<uint16_t> label_action_fbeta(const FusionSpace& space, const Vec& beta);

// The two images of σ the construction pins down: [0]^- ↦ [α₁]^+ and
// [α₁]^- ↦ [α₁]^-, where α₁ is the first frame vector.
struct SigmaPartial {
    std::vector<std::pair<ModuleLabel, ModuleLabel>> images;
};
SigmaPartial label_action_sigma_partial(const FusionSpace& space, const Frame& frame,
                                        const BinaryCode& code);

// CLI text forms: "0+", "0-", "lam:<coset-index>:+", "chi:<coset-index>:-".
ModuleLabel parse_label(const FusionSpace& space, const std::string& text);
std::string label_str(const ModuleLabel& label, const FusionSpace& space);

}  // namespace latfusion
