#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latfusion/matrix.hpp"
#include "latfusion/numeric.hpp"

namespace latfusion {

struct Coset;
struct DiscriminantGroup;

// Positive-definite lattice given by basis rows in ambient coordinates with
// inner product <x,y> = metric_scale * (x . y). Rank n rows of length m >= n
// (rectangular on purpose: A_n has no rational square basis under a scalar
// metric). Immutable after construction; cheap to copy (shared internals).
class Lattice {
  public:
    Lattice(std::string name, Mat basis, Rat metric_scale);

    const std::string& name() const { return d_->name; }
    const Mat& basis() const { return d_->basis; }
    const Rat& metric_scale() const { return d_->scale; }
    int rank() const { return d_->rank; }
    int ambient_dim() const { return d_->ambient; }

    const Mat& gram() const { return d_->gram; }
    const Rat& det() const { return d_->det; }
    bool gram_is_integral() const { return d_->integral; }
    bool is_even() const { return d_->even; }

    // Rows generate the dual lattice L°; <dual_i, basis_j> = delta_ij.
    const Mat& dual_basis() const { return d_->dual; }
    Lattice dual() const;

    Rat inner(const Vec& a, const Vec& b) const;

    bool in_span(const Vec& v) const;
    // exact basis coordinates of v; nullopt if outside the span
    std::optional<Vec> coords(const Vec& v) const;
    bool contains(const Vec& v) const;       // v in L
    bool dual_contains(const Vec& v) const;  // v in L°

    // Canonicalizes shift modulo L; shift must lie in the rational span.
    Coset coset(const Vec& shift) const;
    Coset zero_coset() const;

    // Invariant factors of gram_den * gram (the Gram matrix cleared of
    // denominators); for an integral Gram these are the invariant factors
    // of L°/L including the trivial ones.
    const std::vector<Int>& snf_diagonal() const { return d_->snf.diag; }

    // L°/L. Requires an integral Gram matrix.
    const DiscriminantGroup& discriminant_group() const;

    // 2L° ⊆ L and every vector of L° has integral norm.
    bool is_2elementary_totally_even() const;

    bool operator==(const Lattice& other) const;

  private:
    struct Data {
        std::string name;
        Mat basis;
        Rat scale;
        int rank = 0, ambient = 0;
        Mat gram;
        Rat det;
        bool even = false, integral = false;
        Mat dual;
        Int gram_den;  // gram_den * gram is integral
        Snf snf;       // of gram_den * gram
        mutable std::shared_ptr<const DiscriminantGroup> disc;
    };
    std::shared_ptr<const Data> d_;
};

// shift + L with the shift stored canonically: its coordinates in the dual
// basis, pushed through the Smith normal form of the Gram matrix, are reduced
// into [0, d_i) per invariant factor. key is that reduced coordinate vector,
// a deterministic identifier for the coset within its lattice.
struct Coset {
    Lattice lattice;
    Vec shift;
    Vec key;

    bool is_zero() const;
    Rat norm() const;  // norm of the canonical representative
};

struct DiscriminantGroup {
    std::vector<Int> invariant_factors;  // the d_i > 1
    std::vector<Coset> generators;       // generator i has order d_i
    Int order;
};

// All cosets λ+L with λ ∈ L° and 2λ ∈ L, zero coset first, deterministic
// order. Requires an integral Gram matrix.
std::vector<Coset> two_torsion_cosets(const Lattice& L);

Coset coset_add(const Coset& a, const Coset& b);
bool coset_eq(const Coset& a, const Coset& b);

// Complete list of v ∈ c with <v,v> = k, sorted lexicographically.
// Recursive shifted enumeration over an exact-Cholesky search box; floating
// point only widens the box, and every emitted vector passes an exact
// integer norm check.
std::vector<Vec> vectors_of_norm(const Coset& c, const Rat& k);

// Counts of coset vectors by norm, for all norms <= max_norm. Deliberately a
// second, independent enumeration (iterative, counting only, bounds from a
// direct floating Cholesky) so theta series cross-check vectors_of_norm
// instead of restating it.
std::map<Rat, long long> norm_histogram(const Coset& c, const Rat& max_norm);

struct MinNorm {
    Rat norm;
    long long count;
};
// Smallest norm of a nonzero vector in the coset (nonzero vector of L for
// the zero coset) together with its multiplicity.
MinNorm min_norm(const Coset& c);

// A1..A24, D2..D24, E6, E7, E8, sqrt2-prefixed versions of those, BW16
// (Construction B from RM(1,4)), unimodular24 (even rootless unimodular of
// rank 24, built from the extended Golay code).
Lattice builtin(const std::string& name);

// |O(L)| by exhaustive backtracking over images of basis vectors among
// vectors of matching norm. Guarded to rank <= 4.
Int isometry_search(const Lattice& L);

// {"name": str, "denominator": d, "basis": [[int]] (entries scaled by d),
// "metric_scale": [num, den]}
std::string lattice_to_json(const Lattice& L);
Lattice lattice_from_json(const std::string& text);

// "builtin:<name>" or a path to a lattice JSON file.
Lattice load_lattice_target(const std::string& target);

}  // namespace latfusion
