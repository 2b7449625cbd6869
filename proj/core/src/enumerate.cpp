#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "latfusion/lattice.hpp"

namespace latfusion {

namespace {

struct FloatLdl {
    std::vector<double> p;                // pivots
    std::vector<std::vector<double>> u;   // unit upper triangle, u[i][j] for j > i
};

// Exact rational LDL decomposition converted to double at the end. Used by
// the materializing enumerator.
FloatLdl ldl_from_exact(const Mat& g) {
    size_t n = g.size();
    Mat u(n, Vec(n, Rat(0)));
    Vec p(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        Rat pi = g[i][i];
        for (size_t k = 0; k < i; ++k) pi -= p[k] * u[k][i] * u[k][i];
        p[i] = pi;
        for (size_t j = i + 1; j < n; ++j) {
            Rat t = g[i][j];
            for (size_t k = 0; k < i; ++k) t -= p[k] * u[k][i] * u[k][j];
            u[i][j] = t / pi;
        }
    }
    FloatLdl f;
    f.p.resize(n);
    f.u.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        f.p[i] = p[i].get_d();
        for (size_t j = i + 1; j < n; ++j) f.u[i][j] = u[i][j].get_d();
    }
    return f;
}

// Direct double-precision LDL, the independent bound source for the counting
// enumerator.
FloatLdl ldl_float(const Mat& g) {
    size_t n = g.size();
    FloatLdl f;
    f.p.assign(n, 0.0);
    f.u.assign(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> gd(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) gd[i][j] = g[i][j].get_d();
    for (size_t i = 0; i < n; ++i) {
        double pi = gd[i][i];
        for (size_t k = 0; k < i; ++k) pi -= f.p[k] * f.u[k][i] * f.u[k][i];
        if (pi <= 0.0)
            throw std::runtime_error("floating Cholesky failed; Gram matrix too ill-conditioned");
        f.p[i] = pi;
        for (size_t j = i + 1; j < n; ++j) {
            double t = gd[i][j];
            for (size_t k = 0; k < i; ++k) t -= f.p[k] * f.u[k][i] * f.u[k][j];
            f.u[i][j] = t / pi;
        }
    }
    return f;
}

// Shared integerized setup: candidate vectors are v = (y/dnum)·B with y ≡ res
// componentwise mod dnum, and <v,v> = (y·gz·yᵀ) / (gram_den·dnum²).
struct Problem {
    int n = 0;
    long long dnum = 1;
    std::vector<long long> res;
    IMat gz;
    Int gram_den;
    Int scale2;  // gram_den * dnum²
};

Problem make_problem(const Coset& c) {
    const Lattice& L = c.lattice;
    Problem pr;
    pr.n = L.rank();
    Vec x = *L.coords(c.shift);
    Int dn(1);
    for (const auto& e : x) mpz_lcm(dn.get_mpz_t(), dn.get_mpz_t(), e.get_den().get_mpz_t());
    pr.dnum = to_long(dn);
    pr.res.resize(pr.n);
    for (int i = 0; i < pr.n; ++i) {
        Rat t = x[i] * dn;
        Int r = t.get_num() % dn;
        if (r < 0) r += dn;
        pr.res[i] = to_long(r);
    }
    pr.gram_den = 1;
    for (const auto& row : L.gram())
        for (const auto& e : row)
            mpz_lcm(pr.gram_den.get_mpz_t(), pr.gram_den.get_mpz_t(),
                    e.get_den().get_mpz_t());
    pr.gz.assign(pr.n, std::vector<Int>(pr.n));
    for (int i = 0; i < pr.n; ++i)
        for (int j = 0; j < pr.n; ++j) {
            Rat t = L.gram()[i][j] * pr.gram_den;
            pr.gz[i][j] = t.get_num();
        }
    pr.scale2 = pr.gram_den * dn * dn;
    return pr;
}

// Conservative per-coordinate bound on |y| for solutions with norm <= bound,
// derived bottom-up from the LDL data. Used only to pick the accumulator
// type, so overshooting is harmless.
std::vector<double> y_bounds(const Problem& pr, const FloatLdl& f, double bound_d) {
    int n = pr.n;
    double root = std::max(0.0, bound_d) * double(pr.dnum) * double(pr.dnum) + 1.0;
    std::vector<double> yb(n, 0.0);
    for (int l = n - 1; l >= 0; --l) {
        double center = 0.0;
        for (int j = l + 1; j < n; ++j) center += std::fabs(f.u[l][j]) * yb[j];
        yb[l] = std::sqrt(root / f.p[l]) + center + 1.0;
    }
    return yb;
}

bool fits_i128(const Problem& pr, const std::vector<double>& yb, const Rat& target_num) {
    double ymax = 0.0, gmax = 0.0;
    for (double v : yb) ymax = std::max(ymax, v);
    for (const auto& row : pr.gz)
        for (const auto& e : row) gmax = std::max(gmax, std::fabs(e.get_d()));
    if (ymax > 4.0e15) throw std::runtime_error("enumeration bounds too large");
    double smax = double(pr.n) * double(pr.n) * gmax * ymax * ymax;
    double amax = double(pr.n) * gmax * ymax;
    if (smax > 1.0e35 || amax * ymax > 1.0e35) return false;
    double tmax = std::fabs(target_num.get_d());
    return tmax < 1.0e35;
}

__int128 to_i128(const Int& v) {
    __int128 r = 0;
    size_t limbs = mpz_size(v.get_mpz_t());
    for (size_t i = limbs; i-- > 0;)
        r = (r << 64) | static_cast<unsigned long long>(mpz_getlimbn(v.get_mpz_t(), i));
    return mpz_sgn(v.get_mpz_t()) < 0 ? -r : r;
}

Int i128_to_int(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 a = neg ? -static_cast<unsigned __int128>(v) : v;
    Int hi(static_cast<unsigned long>(a >> 64));
    Int lo(static_cast<unsigned long>(a & ~0ULL));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

template <class A>
std::vector<std::vector<A>> gz_as(const IMat& gz) {
    std::vector<std::vector<A>> out(gz.size());
    for (size_t i = 0; i < gz.size(); ++i)
        for (const auto& e : gz[i]) {
            if constexpr (std::is_same_v<A, __int128>)
                out[i].push_back(to_i128(e));
            else
                out[i].push_back(e);
        }
    return out;
}

// congruence-respecting integer range [lo, hi] hitting res mod dnum
inline long long cong_start(double lo, long long res, long long dnum) {
    long long l = static_cast<long long>(std::ceil(lo));
    long long delta = (res - l) % dnum;
    if (delta < 0) delta += dnum;
    return l + delta;
}

// Recursive, materializing walker: collects every y with y·gz·yᵀ == target.
template <class A>
struct ExactLister {
    const Problem& pr;
    const FloatLdl& f;
    A target;
    std::vector<std::vector<A>> gz;
    std::vector<long long> y;
    // per-level snapshots, filled on entry: acc[l][i] = Σ_{j>l} gz[i][j]·y[j],
    // s[l] = Σ_{i,j>l} gz[i][j]·y[i]·y[j]
    std::vector<std::vector<A>> acc;
    std::vector<A> s;
    std::vector<std::vector<long long>> out;

    ExactLister(const Problem& p, const FloatLdl& fl, A tgt)
        : pr(p), f(fl), target(tgt), gz(gz_as<A>(p.gz)), y(p.n, 0),
          acc(p.n, std::vector<A>(p.n, A(0))), s(p.n, A(0)) {}

    void run(double root_budget) {
        if (pr.n == 0) return;
        descend(pr.n - 1, root_budget);
    }

    void descend(int l, double rem) {
        int n = pr.n;
        if (l < n - 1) {
            int up = l + 1;
            for (int i = 0; i <= l; ++i) acc[l][i] = acc[up][i] + gz[i][up] * A(long(y[up]));
            s[l] = s[up] + A(long(y[up])) * (A(2) * acc[up][up] + gz[up][up] * A(long(y[up])));
        }
        double cl = 0.0;
        for (int j = l + 1; j < n; ++j) cl += f.u[l][j] * double(y[j]);
        double hw = std::sqrt(std::max(rem, 0.0) / f.p[l]) * (1.0 + 1e-9) + 1e-6;
        long long hi = static_cast<long long>(std::floor(-cl + hw));
        for (long long v = cong_start(-cl - hw, pr.res[l], pr.dnum); v <= hi; v += pr.dnum) {
            y[l] = v;
            if (l == 0) {
                A leaf = s[0] + A(long(v)) * (A(2) * acc[0][0] + gz[0][0] * A(long(v)));
                if (leaf == target) out.push_back(y);
            } else {
                double dv = double(v) + cl;
                descend(l - 1, rem - f.p[l] * dv * dv);
            }
        }
        y[l] = 0;
    }
};

// Iterative, counting walker: histogram of y·gz·yᵀ values up to tmax.
template <class A>
struct CountWalker {
    const Problem& pr;
    const FloatLdl& f;
    A tmax;
    std::vector<std::vector<A>> gz;
    std::map<A, long long> buckets;

    CountWalker(const Problem& p, const FloatLdl& fl, A t)
        : pr(p), f(fl), tmax(t), gz(gz_as<A>(p.gz)) {}

    void run(double root_budget) {
        int n = pr.n;
        if (n == 0) return;
        std::vector<long long> y(n, 0), hi(n, 0);
        std::vector<double> cl(n, 0.0), rem(n, 0.0);
        std::vector<std::vector<A>> acc(n, std::vector<A>(n, A(0)));
        std::vector<A> s(n, A(0));

        auto enter = [&](int l) {
            if (l < n - 1) {
                int up = l + 1;
                for (int i = 0; i <= l; ++i) acc[l][i] = acc[up][i] + gz[i][up] * A(long(y[up]));
                s[l] = s[up] + A(long(y[up])) * (A(2) * acc[up][up] + gz[up][up] * A(long(y[up])));
                double dv = double(y[up]) + cl[up];
                rem[l] = rem[up] - f.p[up] * dv * dv;
            } else {
                rem[l] = root_budget;
            }
            cl[l] = 0.0;
            for (int j = l + 1; j < n; ++j) cl[l] += f.u[l][j] * double(y[j]);
            double hw = std::sqrt(std::max(rem[l], 0.0) / f.p[l]) * (1.0 + 1e-9) + 1e-6;
            hi[l] = static_cast<long long>(std::floor(-cl[l] + hw));
            y[l] = cong_start(-cl[l] - hw, pr.res[l], pr.dnum) - pr.dnum;
        };

        int l = n - 1;
        enter(l);
        while (true) {
            y[l] += pr.dnum;
            if (y[l] > hi[l]) {
                ++l;
                if (l == n) break;
                continue;
            }
            if (l == 0) {
                A leaf = s[0] + A(long(y[0])) * (A(2) * acc[0][0] + gz[0][0] * A(long(y[0])));
                if (leaf <= tmax) ++buckets[leaf];
            } else {
                --l;
                enter(l);
            }
        }
    }
};

Rat bucket_to_norm(const Int& s, const Int& scale2) {
    Rat r(s);
    r /= Rat(scale2);
    return r;
}

}  // namespace

std::vector<Vec> vectors_of_norm(const Coset& c, const Rat& k) {
    std::vector<Vec> out;
    if (k < 0) return out;
    Problem pr = make_problem(c);
    Rat tgt = k * Rat(pr.scale2);
    if (!is_integer(tgt)) return out;
    FloatLdl f = ldl_from_exact(c.lattice.gram());
    double root = k.get_d() * double(pr.dnum) * double(pr.dnum) * (1.0 + 1e-9) + 1e-6;
    std::vector<double> yb = y_bounds(pr, f, k.get_d());

    std::vector<std::vector<long long>> ys;
    if (fits_i128(pr, yb, Rat(tgt.get_num()))) {
        ExactLister<__int128> w(pr, f, to_i128(tgt.get_num()));
        w.run(root);
        ys = std::move(w.out);
    } else {
        ExactLister<Int> w(pr, f, tgt.get_num());
        w.run(root);
        ys = std::move(w.out);
    }
    const Mat& b = c.lattice.basis();
    for (const auto& yv : ys) {
        Vec z(pr.n);
        for (int i = 0; i < pr.n; ++i) z[i] = rat(yv[i], pr.dnum);
        out.push_back(row_times_mat(z, b));
    }
    std::sort(out.begin(), out.end(), vec_less);
    return out;
}

std::map<Rat, long long> norm_histogram(const Coset& c, const Rat& max_norm) {
    std::map<Rat, long long> hist;
    if (max_norm < 0) return hist;
    Problem pr = make_problem(c);
    Rat tr = max_norm * Rat(pr.scale2);
    Int tmax = floor_rat(tr);
    FloatLdl f = ldl_float(c.lattice.gram());
    double root =
        max_norm.get_d() * double(pr.dnum) * double(pr.dnum) * (1.0 + 1e-9) + 1e-6;
    std::vector<double> yb = y_bounds(pr, f, max_norm.get_d());

    if (fits_i128(pr, yb, Rat(tmax))) {
        CountWalker<__int128> w(pr, f, to_i128(tmax));
        w.run(root);
        for (const auto& [sv, cnt] : w.buckets)
            hist[bucket_to_norm(i128_to_int(sv), pr.scale2)] += cnt;
    } else {
        CountWalker<Int> w(pr, f, tmax);
        w.run(root);
        for (const auto& [sv, cnt] : w.buckets)
            hist[bucket_to_norm(sv, pr.scale2)] += cnt;
    }
    return hist;
}

MinNorm min_norm(const Coset& c) {
    const Lattice& L = c.lattice;
    Rat bound;
    if (c.is_zero()) {
        bound = L.inner(L.basis()[0], L.basis()[0]);
        for (int i = 1; i < L.rank(); ++i)
            bound = std::min(bound, L.inner(L.basis()[i], L.basis()[i]));
    } else {
        bound = c.norm();
    }
    auto hist = norm_histogram(c, bound);
    for (const auto& [nrm, cnt] : hist)
        if (nrm > 0) return {nrm, cnt};
    throw std::logic_error("min_norm: empty histogram");
}

}  // namespace latfusion
