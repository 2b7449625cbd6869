#include "latfusion/modcat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latfusion {

namespace {

int norm_parity(const Coset& c) {
    Rat n = c.norm();
    if (!is_integer(n))
        throw std::invalid_argument("coset representative has non-integral norm");
    return mpz_odd_p(n.get_num_mpz_t()) ? 1 : 0;
}

bool same_lattice(const ModuleLabel& a, const ModuleLabel& b) {
    return a.coset.lattice == b.coset.lattice;
}

// Cheap 2-elementary test (integral Gram, invariant factors 1 or 2); the
// totally-even half is enforced where norms are actually read.
bool two_elementary(const Lattice& L) {
    if (!L.gram_is_integral()) return false;
    for (const Int& d : L.snf_diagonal())
        if (d != 1 && d != 2) return false;
    return true;
}

void require_signed_coset(const Coset& lam) {
    if (!lam.lattice.contains(vec_scale(Rat(2), lam.shift)))
        throw std::invalid_argument("2*lambda must lie in L for a signed label");
}

}  // namespace

ModuleLabel label_pair(const Coset& mu) {
    if (mu.lattice.contains(vec_scale(Rat(2), mu.shift)))
        throw std::invalid_argument("2*mu lies in L; this coset makes a signed label");
    Coset neg = mu.lattice.coset(vec_scale(Rat(-1), mu.shift));
    return ModuleLabel{LabelKind::untwisted_pair, vec_less(neg.key, mu.key) ? neg : mu, 0};
}

ModuleLabel label_signed(const Coset& lam, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    require_signed_coset(lam);
    norm_parity(lam);  // rejects non-integral norms up front
    return ModuleLabel{LabelKind::untwisted_signed, lam, sign};
}

ModuleLabel label_twisted(const Coset& lam, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    if (!two_elementary(lam.lattice))
        throw std::invalid_argument("twisted labels require 2L° ⊆ L");
    require_signed_coset(lam);
    norm_parity(lam);
    return ModuleLabel{LabelKind::twisted_signed, lam, sign};
}

bool label_eq(const ModuleLabel& a, const ModuleLabel& b) {
    return a.kind == b.kind && a.sign == b.sign && coset_eq(a.coset, b.coset);
}

int nu(const Coset& lam) { return norm_parity(lam) == 0 ? 1 : -1; }

uint32_t FusionSpace::index_of(const ModuleLabel& label) const {
    if (label.kind == LabelKind::untwisted_pair)
        throw std::invalid_argument("pair labels do not occur in a 2-elementary fusion space");
    if (!(label.coset.lattice == lattice))
        throw std::invalid_argument("label belongs to a different lattice");
    auto it = coset_index.find(label.coset.key);
    if (it == coset_index.end()) throw std::invalid_argument("label coset is not two-torsion");
    uint32_t mask = it->second;
    uint32_t t = label.kind == LabelKind::twisted_signed ? 1 : 0;
    uint32_t s = label.sign < 0 ? 1 : 0;
    if (t) s ^= static_cast<uint32_t>(parity[mask]);
    return s | (t << 1) | (mask << 2);
}

ModuleLabel FusionSpace::label_at(uint32_t v) const {
    if (v >= degree()) throw std::invalid_argument("label index out of range");
    uint32_t mask = v >> 2;
    uint32_t t = (v >> 1) & 1;
    uint32_t s = v & 1;
    if (t) s ^= static_cast<uint32_t>(parity[mask]);
    int sign = s ? -1 : 1;
    return ModuleLabel{t ? LabelKind::twisted_signed : LabelKind::untwisted_signed,
                       cosets[mask], sign};
}

ModuleLabel fuse(const ModuleLabel& a, const ModuleLabel& b) {
    if (!same_lattice(a, b)) throw std::invalid_argument("fuse: labels over different lattices");
    if (a.kind == LabelKind::untwisted_pair || b.kind == LabelKind::untwisted_pair)
        throw std::invalid_argument("fuse: no general rule for pair labels");
    if (!two_elementary(a.coset.lattice))
        throw std::invalid_argument("fuse: lattice is not 2-elementary totally even");
    Coset sum = coset_add(a.coset, b.coset);
    bool ta = a.kind == LabelKind::twisted_signed, tb = b.kind == LabelKind::twisted_signed;
    int sign = a.sign * b.sign;
    if (!ta && !tb) return ModuleLabel{LabelKind::untwisted_signed, sum, sign};
    if (ta && tb)
        return ModuleLabel{LabelKind::untwisted_signed, sum,
                           sign * nu(a.coset) * nu(b.coset)};
    const Coset& twisted = ta ? a.coset : b.coset;
    return ModuleLabel{LabelKind::twisted_signed, sum, sign * nu(twisted) * nu(sum)};
}

int qform(const ModuleLabel& label) {
    const Lattice& L = label.coset.lattice;
    if (L.rank() % 8 != 0)
        throw std::invalid_argument("qform: rank must be a multiple of 8");
    switch (label.kind) {
        case LabelKind::twisted_signed:
            if (label.sign > 0) return L.rank() % 16 == 8 ? 1 : 0;
            return L.rank() % 16 == 0 ? 1 : 0;
        default:
            return norm_parity(label.coset);
    }
}

QSeries graded_dim(const ModuleLabel& label, const Rat& cutoff) {
    switch (label.kind) {
        case LabelKind::untwisted_pair:
            return graded_dim_pair(label.coset, cutoff);
        case LabelKind::untwisted_signed:
            if (label.coset.is_zero())
                return graded_dim_zero(label.coset.lattice, label.sign, cutoff);
            return graded_dim_signed(label.coset, label.sign, cutoff);
        case LabelKind::twisted_signed:
            return graded_dim_twisted(label.coset.lattice, label.sign, cutoff);
    }
    throw std::logic_error("unreachable");
}

namespace {

// dim_*(W) must sit in Z[q] exactly when q_L(W) = 0 (and in q^{1/2}Z[q]
// otherwise); checking a few labels ties the arithmetic definition of q_L to
// the graded dimensions it encodes.
void cross_check_parity(const FusionSpace& space) {
    if (!space.has_quad) return;
    std::vector<uint32_t> sample = {0, 1, 2, 3};
    for (uint32_t mask = 1; mask < space.cosets.size() && mask <= 2; ++mask) {
        sample.push_back(mask << 2);        // [λ]^+
        sample.push_back((mask << 2) | 2);  // a twisted label on the same coset
    }
    for (uint32_t v : sample) {
        ModuleLabel label = space.label_at(v);
        QSeries dim = graded_dim(label, Rat(2));
        bool half = false;
        for (const auto& [e, c] : dim.terms())
            if (!is_integer(e)) half = true;
        if ((space.quad.q(v) == 1) != half)
            throw std::runtime_error(
                "internal inconsistency: graded-dimension parity disagrees with q_L");
    }
}

}  // namespace

FusionSpace build_fusion_space(const Lattice& L) {
    if (!L.is_2elementary_totally_even())
        throw std::invalid_argument("build_fusion_space: lattice is not 2-elementary totally even");
    FusionSpace space{L, two_torsion_cosets(L), {}, 0, 0, false, F2QuadSpace{}, {}};
    // det = 2^m for these lattices; read m off the invariant factors
    for (const Int& d : L.snf_diagonal())
        if (d == 2) ++space.m;
    if (space.cosets.size() != (1u << space.m))
        throw std::runtime_error("internal inconsistency: torsion count vs determinant");
    space.dim = space.m + 2;
    space.parity.reserve(space.cosets.size());
    for (uint32_t i = 0; i < space.cosets.size(); ++i) {
        space.parity.push_back(norm_parity(space.cosets[i]));
        space.coset_index.emplace(space.cosets[i].key, i);
    }
    if (L.rank() % 8 == 0) {
        std::vector<uint8_t> values(space.degree());
        for (uint32_t v = 0; v < space.degree(); ++v)
            values[v] = static_cast<uint8_t>(qform(space.label_at(v)));
        space.quad = quad_space_from_table(space.dim, values);
        space.has_quad = true;
    }
    cross_check_parity(space);
    return space;
}

namespace {

void require_even_rootless_here(const Lattice& L) {
    if (!L.is_even()) throw std::invalid_argument("lattice must be even");
    if (min_norm(L.zero_coset()).norm <= 2) throw std::invalid_argument("lattice has roots");
}

bool exceptional_2ete(const Lattice& L) {
    return (L.rank() == 8 || L.rank() == 16) && L.det() == 256 &&
           L.is_2elementary_totally_even();
}

// the cosets entering both Q_L and U_L: two-torsion with exactly 2n vectors
// of norm 2
std::vector<Coset> frame_cosets(const Lattice& L) {
    std::vector<Coset> out;
    long long want = 2LL * L.rank();
    for (const Coset& c : two_torsion_cosets(L)) {
        if (c.is_zero()) continue;
        if (static_cast<long long>(vectors_of_norm(c, Rat(2)).size()) == want)
            out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<ModuleLabel> orbit_QL(const Lattice& L) {
    require_even_rootless_here(L);
    std::vector<ModuleLabel> orbit;
    if (exceptional_2ete(L)) {
        FusionSpace space = build_fusion_space(L);
        for (uint32_t v = 1; v < space.degree(); ++v)
            if (space.quad.q(v) == 0) orbit.push_back(space.label_at(v));
        return orbit;
    }
    orbit.push_back(label_signed(L.zero_coset(), -1));
    for (const Coset& c : frame_cosets(L)) {
        orbit.push_back(label_signed(c, 1));
        orbit.push_back(label_signed(c, -1));
    }
    return orbit;
}

ULSubspace subspace_UL(const Lattice& L) {
    require_even_rootless_here(L);
    if (exceptional_2ete(L))
        throw std::invalid_argument("subspace_UL: exceptional lattice, U_L is not defined this way");
    ULSubspace u;
    u.cosets.push_back(L.zero_coset());
    for (const Coset& c : frame_cosets(L)) u.cosets.push_back(c);
    std::map<Vec, size_t, VecKeyLess> keys;
    for (size_t i = 0; i < u.cosets.size(); ++i) keys.emplace(u.cosets[i].key, i);
    for (const Coset& a : u.cosets)
        for (const Coset& b : u.cosets)
            if (!keys.count(coset_add(a, b).key))
                throw std::runtime_error("internal inconsistency: U_L not closed under addition");
    size_t n = u.cosets.size();
    while (n > 1) {
        if (n % 2) throw std::runtime_error("internal inconsistency: |U_L| not a power of 2");
        n /= 2;
        ++u.dim;
    }
    return u;
}

std::vector<uint16_t> label_action_fbeta(const FusionSpace& space, const Vec& beta) {
    if (!space.lattice.dual_contains(beta))
        throw std::invalid_argument("label_action_fbeta: beta must lie in L°");
    std::vector<uint16_t> perm(space.degree());
    for (uint32_t v = 0; v < space.degree(); ++v) {
        ModuleLabel label = space.label_at(v);
        if (label.kind == LabelKind::untwisted_signed) {
            Rat ip = space.lattice.inner(beta, vec_scale(Rat(2), label.coset.shift));
            if (!is_integer(ip))
                throw std::runtime_error("internal inconsistency: <beta,2λ> not integral");
            if (mpz_odd_p(ip.get_num_mpz_t())) label.sign = -label.sign;
        } else {
            label.coset = space.lattice.coset(vec_add(label.coset.shift, beta));
        }
        perm[v] = static_cast<uint16_t>(space.index_of(label));
    }
    return perm;
}

SigmaPartial label_action_sigma_partial(const FusionSpace& space, const Frame& frame,
                                        const BinaryCode& code) {
    const Lattice& L = space.lattice;
    size_t n = static_cast<size_t>(L.rank());
    if (frame.vectors.size() != n)
        throw std::invalid_argument("sigma: frame size does not match the rank");
    LbResult rebuilt = lb_from_code(code);
    if (rebuilt.lattice.ambient_dim() != L.ambient_dim() ||
        rebuilt.lattice.metric_scale() != L.metric_scale() || rebuilt.lattice.det() != L.det())
        throw std::invalid_argument("sigma: code does not rebuild this lattice");
    for (const Vec& row : rebuilt.lattice.basis())
        if (!L.contains(row)) throw std::invalid_argument("sigma: code does not rebuild this lattice");
    for (size_t i = 0; i < n; ++i) {
        const Vec& a = frame.vectors[i];
        if (!L.dual_contains(a) || !L.contains(vec_scale(Rat(2), a)) || L.inner(a, a) != 2)
            throw std::invalid_argument("sigma: frame vector is not a norm-2 half-lattice axis");
        for (size_t j = 0; j < i; ++j)
            if (L.inner(a, frame.vectors[j]) != 0)
                throw std::invalid_argument("sigma: frame vectors are not orthogonal");
    }
    ModuleLabel zero_minus = label_signed(L.zero_coset(), -1);
    Coset a1 = L.coset(frame.vectors[0]);
    SigmaPartial out;
    out.images.emplace_back(zero_minus, label_signed(a1, 1));
    out.images.emplace_back(label_signed(a1, -1), label_signed(a1, -1));
    return out;
}

ModuleLabel parse_label(const FusionSpace& space, const std::string& text) {
    auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("cannot parse label '" + text + "'");
    };
    if (text == "0+") return space.label_at(0);
    if (text == "0-") return space.label_at(1);
    size_t c1 = text.find(':');
    size_t c2 = text.rfind(':');
    if (c1 == std::string::npos || c2 == c1) throw bad();
    std::string kind = text.substr(0, c1);
    std::string idx = text.substr(c1 + 1, c2 - c1 - 1);
    std::string sig = text.substr(c2 + 1);
    if ((kind != "lam" && kind != "chi") || (sig != "+" && sig != "-") || idx.empty()) throw bad();
    unsigned long i = 0;
    try {
        size_t pos = 0;
        i = std::stoul(idx, &pos);
        if (pos != idx.size()) throw bad();
    } catch (const std::exception&) {
        throw bad();
    }
    if (i >= space.cosets.size()) throw bad();
    int sign = sig == "+" ? 1 : -1;
    if (kind == "lam" && i == 0)
        return space.label_at(sign > 0 ? 0 : 1);
    return kind == "lam" ? label_signed(space.cosets[i], sign)
                         : label_twisted(space.cosets[i], sign);
}

std::string label_str(const ModuleLabel& label, const FusionSpace& space) {
    std::ostringstream os;
    const char* sig = label.sign < 0 ? "-" : "+";
    if (label.kind == LabelKind::untwisted_pair) {
        os << "[mu]";
        return os.str();
    }
    uint32_t mask = space.coset_index.at(label.coset.key);
    if (label.kind == LabelKind::untwisted_signed) {
        if (mask == 0)
            os << "0" << sig;
        else
            os << "lam:" << mask << ":" << sig;
    } else {
        os << "chi:" << mask << ":" << sig;
    }
    return os.str();
}

}  // namespace latfusion
