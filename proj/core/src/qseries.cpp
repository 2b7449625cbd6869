#include "latfusion/qseries.hpp"

#include <sstream>
#include <stdexcept>

namespace latfusion {

QSeries::QSeries(Rat cutoff) : cutoff_(std::move(cutoff)) {
    cutoff_.canonicalize();
}

Rat QSeries::coeff(const Rat& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rat(0) : it->second;
}

void QSeries::add_term(const Rat& exponent, const Rat& c) {
    if (c == 0 || exponent > cutoff_) return;
    Rat& slot = terms_[exponent];
    slot += c;
    if (slot == 0) terms_.erase(exponent);
}

QSeries QSeries::truncated(const Rat& new_cutoff) const {
    if (new_cutoff > cutoff_)
        throw std::invalid_argument("QSeries::truncated cannot raise the cutoff");
    QSeries out(new_cutoff);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.cutoff(), b.cutoff()));
    for (const auto& [e, c] : a.terms()) out.add_term(e, c);
    for (const auto& [e, c] : b.terms()) out.add_term(e, c);
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.cutoff(), b.cutoff()));
    for (const auto& [e, c] : a.terms()) out.add_term(e, c);
    for (const auto& [e, c] : b.terms()) out.add_term(e, -c);
    return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.cutoff(), b.cutoff()));
    for (const auto& [ea, ca] : a.terms()) {
        if (ea > out.cutoff()) break;
        for (const auto& [eb, cb] : b.terms()) {
            Rat e = ea + eb;
            if (e > out.cutoff()) break;  // exponents ascend within b
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

QSeries operator*(const Rat& c, const QSeries& a) {
    QSeries out(a.cutoff());
    for (const auto& [e, t] : a.terms()) out.add_term(e, c * t);
    return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
    return a.cutoff() == b.cutoff() && a.terms() == b.terms();
}

QSeries qs_constant(const Rat& c, const Rat& cutoff) {
    QSeries out(cutoff);
    out.add_term(Rat(0), c);
    return out;
}

QSeries qs_pow(const QSeries& a, unsigned e) {
    QSeries acc = qs_constant(Rat(1), a.cutoff());
    QSeries sq = a;
    while (e) {
        if (e & 1) acc = acc * sq;
        e >>= 1;
        if (e) sq = sq * sq;
    }
    return acc;
}

QSeries qs_invert(const QSeries& a) {
    if (a.coeff(Rat(0)) != 1)
        throw std::invalid_argument("qs_invert requires constant term 1");
    if (!a.terms().empty() && a.terms().begin()->first < 0)
        throw std::invalid_argument("qs_invert requires nonnegative exponents");
    // Exponents of the inverse live on the 1/d grid spanned by a's exponents.
    Int d(1);
    for (const auto& [e, c] : a.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
    QSeries out(a.cutoff());
    out.add_term(Rat(0), Rat(1));
    Rat step = Rat(1) / Rat(d);
    for (Rat e = step; e <= a.cutoff(); e += step) {
        // coefficient of q^e in a*out must vanish
        Rat s(0);
        for (const auto& [ea, ca] : a.terms()) {
            if (ea <= 0) continue;
            if (ea > e) break;
            s += ca * out.coeff(e - ea);
        }
        out.add_term(e, -s);
    }
    return out;
}

QSeries qs_shift(const QSeries& a, const Rat& e) {
    QSeries out(a.cutoff() + e);
    for (const auto& [ea, ca] : a.terms()) out.add_term(ea + e, ca);
    return out;
}

std::optional<Rat> first_mismatch(const QSeries& a, const QSeries& b, const Rat& upto) {
    Rat lim = std::min({upto, a.cutoff(), b.cutoff()});
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        Rat ea = ia != a.terms().end() ? ia->first : lim + 1;
        Rat eb = ib != b.terms().end() ? ib->first : lim + 1;
        Rat e = std::min(ea, eb);
        if (e > lim) break;
        Rat ca = ea == e ? (ia++)->second : Rat(0);
        Rat cb = eb == e ? (ib++)->second : Rat(0);
        if (ca != cb) return e;
    }
    return std::nullopt;
}

std::string to_string(const QSeries& s) {
    if (s.terms().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : s.terms()) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            os << rat_str(a);
            continue;
        }
        if (a != 1) os << rat_str(a) << "*";
        os << "q";
        if (e != 1) {
            if (is_integer(e))
                os << "^" << e.get_num().get_str();
            else
                os << "^(" << e.get_num().get_str() << "/" << e.get_den().get_str() << ")";
        }
    }
    return os.str();
}

QSeries phi(const Rat& arg_scale, const Rat& cutoff) {
    if (cutoff <= 0) throw std::invalid_argument("phi: cutoff must be positive");
    if (arg_scale != rat(1, 2) && arg_scale != 1 && arg_scale != 2)
        throw std::invalid_argument("phi: argument scale must be 1/2, 1 or 2");
    QSeries out = qs_constant(Rat(1), cutoff);
    for (Rat e = arg_scale; e <= cutoff; e += arg_scale) {
        QSeries factor = qs_constant(Rat(1), cutoff);
        factor.add_term(e, Rat(-1));
        out = out * factor;
    }
    return out;
}

QSeries theta_series(const Coset& c, const Rat& cutoff) {
    if (cutoff <= 0) throw std::invalid_argument("theta_series: cutoff must be positive");
    QSeries out(cutoff);
    for (const auto& [norm, count] : norm_histogram(c, 2 * cutoff))
        out.add_term(norm / 2, Rat(static_cast<long>(count)));
    return out;
}

namespace {

QSeries phi_power_inv(const Rat& cutoff, unsigned e) {
    return qs_invert(qs_pow(phi(Rat(1), cutoff), e));
}

}  // namespace

QSeries graded_dim_pair(const Coset& mu, const Rat& cutoff) {
    if (mu.lattice.contains(vec_scale(Rat(2), mu.shift)))
        throw std::invalid_argument("graded_dim_pair: 2*mu lies in L, label is of signed type");
    return theta_series(mu, cutoff) * phi_power_inv(cutoff, mu.lattice.rank());
}

QSeries graded_dim_zero(const Lattice& L, int sign, const Rat& cutoff) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("graded_dim_zero: sign must be +-1");
    unsigned n = L.rank();
    QSeries untw = theta_series(L.zero_coset(), cutoff) * phi_power_inv(cutoff, n);
    QSeries fixed = qs_pow(phi(Rat(1), cutoff), n) * qs_invert(qs_pow(phi(Rat(2), cutoff), n));
    return rat(1, 2) * (sign > 0 ? untw + fixed : untw - fixed);
}

QSeries graded_dim_signed(const Coset& lam, int sign, const Rat& cutoff) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("graded_dim_signed: sign must be +-1");
    if (lam.is_zero())
        throw std::invalid_argument("graded_dim_signed: zero coset takes the [0]^± form");
    if (!lam.lattice.contains(vec_scale(Rat(2), lam.shift)))
        throw std::invalid_argument("graded_dim_signed: 2*lambda must lie in L");
    return rat(1, 2) *
           (theta_series(lam, cutoff) * phi_power_inv(cutoff, lam.lattice.rank()));
}

Int twisted_module_dim(const Lattice& L) {
    if (!L.gram_is_integral())
        throw std::invalid_argument("twisted_module_dim: 2L° is not contained in L");
    for (const Int& d : L.snf_diagonal())
        if (d != 1 && d != 2)
            throw std::invalid_argument("twisted_module_dim: 2L° is not contained in L");
    // |L/(L ∩ 2L°)| = 2^r with r the F2 rank of the Gram matrix: v ∈ 2L°
    // exactly when all <v, basis_i> are even.
    int n = L.rank();
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = mpz_odd_p(L.gram()[i][j].get_num_mpz_t()) ? 1 : 0;
    int r = 0;
    for (int col = 0; col < n && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (m[i][col]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = 0; i < n; ++i)
            if (i != r && m[i][col])
                for (int j = 0; j < n; ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    if (r % 2 != 0)
        throw std::invalid_argument("twisted_module_dim: |L/(L∩2L°)| is not a perfect square");
    return pow2(static_cast<unsigned long>(r / 2));
}

QSeries graded_dim_twisted(const Lattice& L, int sign, const Rat& cutoff) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("graded_dim_twisted: sign must be +-1");
    unsigned n = L.rank();
    Int dim_t = twisted_module_dim(L);
    QSeries phi1n = qs_pow(phi(Rat(1), cutoff), n);
    QSeries a = phi1n * qs_invert(qs_pow(phi(rat(1, 2), cutoff), n));
    QSeries b = qs_pow(phi(Rat(2), cutoff), n) * qs_pow(phi(rat(1, 2), cutoff), n) *
                qs_invert(qs_pow(phi(Rat(1), cutoff), 2 * n));
    QSeries comb = sign > 0 ? a + b : a - b;
    return qs_shift(Rat(dim_t) / 2 * comb, Rat(n) / 16).truncated(cutoff);
}

namespace {

struct IdentityShape {
    unsigned n;        // rank: 8 or 16
    int last_sign;     // sign of the third term
    Rat term2_coeff;   // scalar on the q^{n/16} middle term
    Rat term3_coeff;   // scalar (unsigned) on the last term
};

// Both displayed identities, multiplied through by
// Φ(q²)^n Φ(q^½)^n Φ(q)^n so no series ever gets inverted:
//   Θ · M = Φ(q)^{3n} Φ(q^½)^n
//         + c2 · q^{n/16} Φ(q)^{3n} Φ(q²)^n
//         ± c3 · q^{n/16} Φ(q²)^{2n} Φ(q^½)^{2n}.
std::optional<Rat> compare_identity(const Coset& zero, const IdentityShape& sh, const Rat& cutoff) {
    unsigned n = sh.n;
    QSeries p1 = phi(Rat(1), cutoff), p2 = phi(Rat(2), cutoff), ph = phi(rat(1, 2), cutoff);
    QSeries mult = qs_pow(p2, n) * qs_pow(ph, n) * qs_pow(p1, n);
    QSeries lhs = theta_series(zero, cutoff) * mult;
    Rat qexp = Rat(n) / 16;
    QSeries rhs = qs_pow(p1, 3 * n) * qs_pow(ph, n) +
                  qs_shift(sh.term2_coeff * (qs_pow(p1, 3 * n) * qs_pow(p2, n)), qexp)
                      .truncated(cutoff);
    QSeries last = qs_shift(sh.term3_coeff * (qs_pow(p2, 2 * n) * qs_pow(ph, 2 * n)), qexp)
                       .truncated(cutoff);
    rhs = sh.last_sign > 0 ? rhs + last : rhs - last;
    return first_mismatch(lhs, rhs, cutoff);
}

}  // namespace

ThetaIdentityCheck check_theta_identity(const Lattice& L, const Rat& cutoff,
                                        std::optional<int> k_override) {
    if (cutoff < 4) throw std::invalid_argument("check_theta_identity: cutoff must be at least 4");
    unsigned n = L.rank();
    if ((n != 8 && n != 16) || L.det() != 256 || !L.is_2elementary_totally_even() ||
        min_norm(L.zero_coset()).norm <= 2)
        throw std::invalid_argument("check_theta_identity: unsupported lattice");
    int k = k_override.value_or(n == 8 ? 0 : 8);
    if (k < 0 || k % 2 != 0)
        throw std::invalid_argument("check_theta_identity: k must be even and nonnegative");
    Rat c2 = Rat(pow2(static_cast<unsigned long>(k / 2)));
    int last_sign = n == 8 ? -1 : 1;

    ThetaIdentityCheck out;
    out.cutoff = cutoff;
    out.dual_cutoff = n == 16 ? std::min(cutoff, Rat(4)) : cutoff;
    out.mismatch_at =
        compare_identity(L.zero_coset(), IdentityShape{n, last_sign, c2, c2}, cutoff);
    if (!out.mismatch_at) {
        Rat dual_c2 = Rat(pow2(static_cast<unsigned long>((2 * n - k) / 2)));
        Rat dual_c3 = Rat(pow2(n / 2));
        out.mismatch_at = compare_identity(L.dual().zero_coset(),
                                           IdentityShape{n, last_sign, dual_c2, dual_c3},
                                           out.dual_cutoff);
    }
    out.ok = !out.mismatch_at.has_value();
    return out;
}

bool verify_theta_identity(const Lattice& L, const Rat& cutoff) {
    return check_theta_identity(L, cutoff).ok;
}

}  // namespace latfusion
