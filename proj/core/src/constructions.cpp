#include "latfusion/constructions.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace latfusion {

namespace {

Vec unit_vec(int n, int i) {
    Vec v(n, Rat(0));
    v[i] = 1;
    return v;
}

Vec half_support(int n, uint32_t word, const std::vector<Vec>* frame) {
    Vec v(frame ? (*frame)[0].size() : size_t(n), Rat(0));
    for (int i = 0; i < n; ++i)
        if (word >> i & 1) {
            if (frame)
                v = vec_add(v, (*frame)[i]);
            else
                v[i] = 1;
        }
    return vec_scale(rat(1, 2), v);
}

// Span definition of L_B over the standard frame, valid for any linear code;
// the doubly even requirement of the public entry point is what makes the
// result even.
Lattice lb_span(const BinaryCode& c, const std::string& name) {
    int n = c.length;
    if (n < 1 || n > 32) throw std::invalid_argument("lb_from_code: length out of range");
    Mat rows;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Vec v(n, Rat(0));
            v[i] += 1;
            v[j] += 1;
            rows.push_back(std::move(v));
            if (j > i) {
                Vec w(n, Rat(0));
                w[i] = 1;
                w[j] = -1;
                rows.push_back(std::move(w));
            }
        }
    for (uint32_t word : c.rref) rows.push_back(half_support(n, word, nullptr));
    return Lattice(name, rational_row_basis(rows), Rat(2));
}

std::string code_tag(const BinaryCode& c) {
    return "n" + std::to_string(c.length) + "k" + std::to_string(c.dimension);
}

// rows: bits 0..n-1 are coefficients, bit 63 the right-hand side. Returns a
// solution with free variables 0, or nullopt if inconsistent.
std::optional<uint64_t> solve_gf2(const std::vector<uint64_t>& rows, int n) {
    std::vector<uint64_t> red;
    std::vector<int> piv;
    uint64_t coeff_mask = (n >= 63) ? ~(uint64_t(1) << 63) : ((uint64_t(1) << n) - 1);
    for (uint64_t r : rows) {
        for (size_t k = 0; k < red.size(); ++k)
            if (r >> piv[k] & 1) r ^= red[k];
        uint64_t coeff = r & coeff_mask;
        if (coeff == 0) {
            if (r >> 63 & 1) return std::nullopt;
            continue;
        }
        int p = std::countr_zero(coeff);
        for (size_t k = 0; k < red.size(); ++k)
            if (red[k] >> p & 1) red[k] ^= r;
        red.push_back(r);
        piv.push_back(p);
    }
    uint64_t s = 0;
    for (size_t k = 0; k < red.size(); ++k)
        if (red[k] >> 63 & 1) s |= uint64_t(1) << piv[k];
    return s;
}

std::optional<BDetect> try_candidate(const Lattice& L, const Coset& lam) {
    int n = L.rank();
    if (lam.is_zero()) return std::nullopt;
    auto norm2 = vectors_of_norm(lam, Rat(2));
    if (static_cast<int>(norm2.size()) != 2 * n) return std::nullopt;

    // one representative per antipodal pair, first nonzero coordinate positive
    std::vector<Vec> alpha;
    for (const auto& v : norm2) {
        bool pos = false;
        for (const auto& e : v) {
            if (e != 0) {
                pos = e > 0;
                break;
            }
        }
        if (pos) alpha.push_back(v);
    }
    if (static_cast<int>(alpha.size()) != n) return std::nullopt;
    std::sort(alpha.begin(), alpha.end(), vec_less);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (L.inner(alpha[i], alpha[j]) != 0) return std::nullopt;

    // code words of basis vectors against the frame
    std::vector<uint32_t> words;
    for (int r = 0; r < n; ++r) {
        uint32_t w = 0;
        for (int i = 0; i < n; ++i) {
            Rat ip = L.inner(L.basis()[r], alpha[i]);
            if (!is_integer(ip)) return std::nullopt;
            if (ip.get_num() % 2 != 0) w |= uint32_t(1) << i;
        }
        words.push_back(w);
    }
    BinaryCode code = code_from_rows(n, words);

    // sign normalization: flip α_i for i in D so that every half-support
    // generator lands in L; the flips are a solution of a linear system over
    // F2 read off from which coset the unflipped generator falls into
    std::vector<uint64_t> sys;
    for (uint32_t w : code.rref) {
        Vec vc = half_support(n, w, &alpha);
        Coset cs = L.coset(vc);
        uint64_t row = w;
        if (coset_eq(cs, lam))
            row |= uint64_t(1) << 63;
        else if (!cs.is_zero())
            return std::nullopt;
        sys.push_back(row);
    }
    auto sol = solve_gf2(sys, n);
    if (!sol) return std::nullopt;
    std::vector<Vec> beta = alpha;
    for (int i = 0; i < n; ++i)
        if (*sol >> i & 1) beta[i] = vec_scale(Rat(-1), beta[i]);

    // reconstruct and compare: generators in L, equal determinant, and the
    // basis of L inside the reconstruction
    Mat rows;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            rows.push_back(vec_add(beta[i], beta[j]));
            if (j > i) rows.push_back(vec_sub(beta[i], beta[j]));
        }
    for (uint32_t w : code.rref) rows.push_back(half_support(n, w, &beta));
    for (const auto& r : rows)
        if (!L.contains(r)) return std::nullopt;
    Lattice rebuilt("LB[" + code_tag(code) + "]", rational_row_basis(rows),
                    L.metric_scale());
    if (rebuilt.det() != L.det()) return std::nullopt;
    for (const auto& r : L.basis())
        if (!rebuilt.contains(r)) return std::nullopt;
    return BDetect{Frame{std::move(beta)}, std::move(code), lam};
}

void require_even_rootless(const Lattice& L) {
    if (!L.is_even())
        throw std::invalid_argument("construction-B detection requires an even lattice");
    if (!vectors_of_norm(L.zero_coset(), Rat(2)).empty())
        throw std::invalid_argument("construction-B detection requires a rootless lattice");
}

}  // namespace

LbResult lb_from_code(const BinaryCode& c) {
    if (!is_doubly_even(c))
        throw std::invalid_argument("lb_from_code requires a doubly even code");
    LbResult r{lb_span(c, "LB[" + code_tag(c) + "]"), Frame{}};
    for (int i = 0; i < c.length; ++i) r.frame.vectors.push_back(unit_vec(c.length, i));
    return r;
}

Lattice la_from_code(const BinaryCode& c) {
    if (!is_doubly_even(c))
        throw std::invalid_argument("la_from_code requires a doubly even code");
    Lattice lb = lb_span(c, "");
    Mat rows = lb.basis();
    rows.push_back(unit_vec(c.length, 0));
    return Lattice("LA[" + code_tag(c) + "]", rational_row_basis(rows), Rat(2));
}

PcobReport verify_pcob(const BinaryCode& c) {
    if (!is_doubly_even(c))
        throw std::invalid_argument("verify_pcob requires a doubly even code");
    if (c.length > 24) throw std::invalid_argument("verify_pcob: length above 24");
    int n = c.length;
    PcobReport rep;
    Lattice lb = lb_span(c, "LB[" + code_tag(c) + "]");

    int e = n - 2 * c.dimension + 2;
    Rat expected = e >= 0 ? Rat(pow2(e)) : Rat(1) / Rat(pow2(-e));
    rep.det_ok = lb.det() == expected;

    // right side of the dual identity: L_B(C^⊥) + Zα_1 + Z(α_Ω/4)
    Mat rows = lb_span(dual_code(c), "").basis();
    rows.push_back(unit_vec(n, 0));
    rows.push_back(Vec(n, rat(1, 4)));
    Lattice rhs("rhs", rational_row_basis(rows), Rat(2));
    rep.dual_ok = rhs.det() == Rat(1) / lb.det();
    for (const auto& r : rhs.basis())
        if (!lb.dual_contains(r)) rep.dual_ok = false;
    for (const auto& r : lb.dual_basis())
        if (!rhs.contains(r)) rep.dual_ok = false;

    rep.minnorm_ok = true;
    if (min_weight(c) > 4) {
        auto mn = min_norm(lb.zero_coset());
        rep.minnorm_ok = mn.norm == 4;
    }
    return rep;
}

std::optional<BDetect> detect_construction_b(const Lattice& L) {
    require_even_rootless(L);
    auto cosets = two_torsion_cosets(L);
    std::sort(cosets.begin(), cosets.end(),
              [](const Coset& a, const Coset& b) { return vec_less(a.shift, b.shift); });
    for (const auto& lam : cosets) {
        auto r = try_candidate(L, lam);
        if (r) return r;
    }
    return std::nullopt;
}

std::optional<BDetect> detect_construction_b_at(const Lattice& L, const Coset& lambda) {
    require_even_rootless(L);
    if (!(lambda.lattice == L))
        throw std::invalid_argument("detect_construction_b_at: coset of a different lattice");
    if (!L.dual_contains(lambda.shift) || !L.contains(vec_scale(Rat(2), lambda.shift)))
        throw std::invalid_argument("detect_construction_b_at: not a two-torsion coset");
    return try_candidate(L, lambda);
}

}  // namespace latfusion
