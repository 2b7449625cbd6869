#pragma once

#include <map>
#include <optional>
#include <string>

#include "latfusion/lattice.hpp"

namespace latfusion {

// Truncated q-expansion with exact rational exponents and coefficients.
// Terms with exponent > cutoff are dropped on entry; zero coefficients are
// never stored. Arithmetic between two series adopts the smaller cutoff.
class QSeries {
  public:
    explicit QSeries(Rat cutoff);

    const Rat& cutoff() const { return cutoff_; }
    const std::map<Rat, Rat>& terms() const { return terms_; }

    Rat coeff(const Rat& exponent) const;
    void add_term(const Rat& exponent, const Rat& c);

    bool is_zero() const { return terms_.empty(); }

    // Lower the cutoff (raising it would fabricate knowledge of terms that
    // were already dropped).
    QSeries truncated(const Rat& new_cutoff) const;

  private:
    Rat cutoff_;
    std::map<Rat, Rat> terms_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rat& c, const QSeries& a);
bool operator==(const QSeries& a, const QSeries& b);

QSeries qs_constant(const Rat& c, const Rat& cutoff);
QSeries qs_pow(const QSeries& a, unsigned e);

// Reciprocal series; requires constant term exactly 1 and no negative
// exponents, which is all the eta quotients here ever need.
QSeries qs_invert(const QSeries& a);

// Multiply by q^a. The cutoff shifts along: terms up to cutoff+a really are
// determined by the input.
QSeries qs_shift(const QSeries& a, const Rat& e);

// Exponent of the first coefficient difference at or below `upto` (also
// capped by both cutoffs); nullopt when the series agree that far.
std::optional<Rat> first_mismatch(const QSeries& a, const QSeries& b, const Rat& upto);

// "c0 + c1*q^(a/b) + ..." with exponents ascending and in lowest terms.
std::string to_string(const QSeries& s);

// Euler product ∏_{i>=1} (1 - q^{a*i}) to the given cutoff. The scale a must
// be one of 1/2, 1, 2; cutoff must be positive.
QSeries phi(const Rat& arg_scale, const Rat& cutoff);

// Σ_{v ∈ c, <v,v> <= 2*cutoff} q^{<v,v>/2}. Counting is done with
// norm_histogram, the iterative walker, so tests can cross-check against
// sums over vectors_of_norm.
QSeries theta_series(const Coset& c, const Rat& cutoff);

// Graded dimensions of the irreducible V_L^+ module classes, one closed form
// each. All quotients divide only by series with constant term 1.
//   pair:    Θ_{μ+L}/Φ^n                  (2μ ∉ L)
//   zero:    (Θ_L/Φ^n ± Φ^n/Φ(q²)^n)/2
//   signed:  Θ_{λ+L}/2Φ^n                 (2λ ∈ L, λ ∉ L; sign irrelevant)
//   twisted: (dim T q^{n/16}/2)(Φ^n/Φ(q^½)^n ± Φ(q²)^n Φ(q^½)^n/Φ^{2n})
QSeries graded_dim_pair(const Coset& mu, const Rat& cutoff);
QSeries graded_dim_zero(const Lattice& L, int sign, const Rat& cutoff);
QSeries graded_dim_signed(const Coset& lam, int sign, const Rat& cutoff);
QSeries graded_dim_twisted(const Lattice& L, int sign, const Rat& cutoff);

// Common dimension of the irreducible twists, |L/(L ∩ 2L°)|^{1/2}. Requires
// 2L° ⊆ L and an even power index (throws otherwise).
Int twisted_module_dim(const Lattice& L);

struct ThetaIdentityCheck {
    bool ok = false;
    Rat cutoff;                        // the main identity was compared to here
    Rat dual_cutoff;                   // and the dual identity to here
    std::optional<Rat> mismatch_at;    // first failing exponent, if any
};

// The rank-8 / rank-16 eta-quotient expressions for Θ_L and Θ_{L°}, compared
// coefficient-wise after clearing denominators with a common Φ power. L must
// be the rank-8 or rank-16 even rootless 2-elementary lattice of determinant
// 2^8 (k = 0 resp. 8); k_override substitutes a deliberately wrong k for
// negative tests. The rank-16 dual comparison is capped at q^4: its lattice
// is denser by a factor 2^8 and enumeration beyond that buys nothing.
ThetaIdentityCheck check_theta_identity(const Lattice& L, const Rat& cutoff,
                                        std::optional<int> k_override = std::nullopt);
bool verify_theta_identity(const Lattice& L, const Rat& cutoff);

}  // namespace latfusion
