#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latfusion/numeric.hpp"

namespace latfusion {

// ---------------------------------------------------------------------------
// Binary linear codes. Words are bitmasks, coordinate i = bit i, length <= 32.
// ---------------------------------------------------------------------------

struct BinaryCode {
    int length = 0;
    std::vector<uint32_t> generators;  // rows as supplied
    std::vector<uint32_t> rref;        // canonical reduced-row-echelon basis
    int dimension = 0;

    bool contains(uint32_t word) const;
    bool operator==(const BinaryCode& other) const {
        return length == other.length && rref == other.rref;
    }
};

BinaryCode code_from_rows(int length, const std::vector<uint32_t>& rows);

// Text format: one generator per line, characters '0'/'1', uniform length;
// '#' starts a comment, blank lines ignored.
BinaryCode parse_code(const std::string& text);
std::string code_to_text(const BinaryCode& c);

// All 2^dim codewords; guard dimension <= 24.
std::vector<uint32_t> codewords(const BinaryCode& c);

// A_i = number of codewords of weight i, i = 0..n.
std::vector<Int> weight_enumerator(const BinaryCode& c);

// Minimum weight over nonzero codewords; the zero code has none, for which
// the conventional +infinity is reported as length+1.
int min_weight(const BinaryCode& c);

bool is_doubly_even(const BinaryCode& c);
bool is_self_orthogonal(const BinaryCode& c);

BinaryCode dual_code(const BinaryCode& c);

// The [16,5] first-order Reed-Muller code: all-one word plus the four
// coordinate-hyperplane indicators (coordinate j read as a point of F2^4).
BinaryCode rm_1_4();

// The extended [24,12,8] Golay code (cyclic QR construction plus parity bit).
BinaryCode extended_golay();

// ---------------------------------------------------------------------------
// Quadratic spaces over F2.
// ---------------------------------------------------------------------------

struct F2QuadSpace {
    int dim = 0;
    std::vector<uint32_t> polarization;  // rows of the bilinear form matrix
    std::vector<uint8_t> q_basis;        // q on the standard basis vectors

    int q(uint32_t x) const;
    int bilin(uint32_t x, uint32_t y) const;
};

// Validates: symmetric polarization with zero diagonal, dim <= 20.
F2QuadSpace quad_space(const std::vector<uint8_t>& q_basis,
                       const std::vector<uint32_t>& polarization);

// Standard form of given type (+1 plus / -1 minus), even dim.
F2QuadSpace standard_quad_space(int dim, int type);

// Rebuild a quadratic space from the full value table over 2^dim points,
// verifying the quadratic-form law q(x+y) = q(x)+q(y)+b(x,y) exhaustively.
// Throws if the table is not a quadratic form.
F2QuadSpace quad_space_from_table(int dim, const std::vector<uint8_t>& values);

bool is_nondegenerate(const F2QuadSpace& s);

// +1 for plus type, -1 for minus. Exhaustive for dim <= 12, symplectic
// standard-form reduction above.
int arf_type(const F2QuadSpace& s);

// Number of nonzero isotropic vectors, by the classical formulas
// (2^{m-1}+1)(2^m-1) / (2^{m-1}-1)(2^m+1) for type plus/minus in dim 2m.
Int count_isotropic(const F2QuadSpace& s);

// Direct count over all 2^dim points (oracle for count_isotropic).
Int count_isotropic_exhaustive(const F2QuadSpace& s);

// Exhaustive count of invertible matrices preserving q; dim <= 4 guard.
Int brute_force_isometries(const F2QuadSpace& s);

// Order of a product of classical-group atoms, e.g.
// "O+_10(2)", "2^16 * Omega+_10(2)", "(2^4:Sym_4).Sym_3", "GL_3(2)".
// Atoms: Sym_n / Sym(n), GL_n(2), Sp_2m(2), O±_2m(2), Omega±_2m(2),
// 2^k, U_4(2), and plain integer literals; separators * : . with parens
// ignored.
Int group_order(const std::string& spec);

}  // namespace latfusion
