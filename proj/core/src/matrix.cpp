#include "latfusion/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace latfusion {

Mat mat_identity(size_t n) {
    Mat a(n, Vec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat r(n, Vec(m, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::invalid_argument("mat_mul: shape mismatch");
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    }
    return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
    Mat r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

Mat mat_scale(const Rat& c, const Mat& a) {
    Mat r = a;
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

Vec row_times_mat(const Vec& x, const Mat& a) {
    if (x.size() != a.size()) throw std::invalid_argument("row_times_mat: shape mismatch");
    size_t m = a.empty() ? 0 : a[0].size();
    Vec r(m, Rat(0));
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < m; ++j) r[j] += x[i] * a[i][j];
    }
    return r;
}

Rat mat_det(const Mat& a) {
    size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("mat_det: not square");
    Mat m = a;
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rat inv = 1 / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

Mat mat_inverse(const Mat& a) {
    size_t n = a.size();
    Mat m = a;
    Mat inv = mat_identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::invalid_argument("mat_inverse: singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rat f = 1 / m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] *= f;
            inv[c][j] *= f;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat g = m[i][c];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= g * m[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

size_t mat_rank(Mat a) {
    size_t rows = a.size();
    if (rows == 0) return 0;
    size_t cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] * inv;
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

bool solve_left(const Mat& a, const Vec& b, Vec& x_out) {
    // x·A = b  <=>  Aᵀ·xᵀ = bᵀ; eliminate on the augmented transpose.
    size_t rows = a.size();
    size_t cols = a.empty() ? b.size() : a[0].size();
    if (b.size() != cols) throw std::invalid_argument("solve_left: shape mismatch");
    Mat aug(cols, Vec(rows + 1, Rat(0)));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) aug[j][i] = a[i][j];
    for (size_t j = 0; j < cols; ++j) aug[j][rows] = b[j];

    std::vector<long> pivot_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < rows && r < cols; ++c) {
        size_t p = r;
        while (p < cols && aug[p][c] == 0) ++p;
        if (p == cols) continue;
        std::swap(aug[p], aug[r]);
        Rat inv = 1 / aug[r][c];
        for (size_t j = 0; j <= rows; ++j) aug[r][j] *= inv;
        for (size_t i = 0; i < cols; ++i) {
            if (i == r || aug[i][c] == 0) continue;
            Rat f = aug[i][c];
            for (size_t j = c; j <= rows; ++j) aug[i][j] -= f * aug[r][j];
        }
        pivot_col[r] = static_cast<long>(c);
        ++r;
    }
    for (size_t i = r; i < cols; ++i)
        if (aug[i][rows] != 0) return false;  // inconsistent
    x_out.assign(rows, Rat(0));
    for (size_t i = 0; i < r; ++i) x_out[static_cast<size_t>(pivot_col[i])] = aug[i][rows];
    return true;
}

IMat hnf_row_basis(IMat a) {
    size_t rows = a.size();
    if (rows == 0) return {};
    size_t cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // Gather the column below r to a single nonzero entry by gcd steps.
        while (true) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (best == rows || cmp(abs(a[i][c]), abs(a[best][c])) < 0)) best = i;
            if (best == rows) break;
            std::swap(a[best], a[r]);
            bool clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        // Reduce the pivot column of earlier rows into [0, pivot).
        for (size_t i = 0; i < r; ++i) {
            if (a[i][c] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q == 0) continue;
            for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

IMat imat_identity(size_t n) {
    IMat a(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

IMat imat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IMat r(n, std::vector<Int>(m, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Snf smith_normal_form(IMat a) {
    size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("smith_normal_form: not square");
    IMat q = imat_identity(n);
    IMat qinv = imat_identity(n);

    auto col_swap = [&](size_t i, size_t j) {
        for (size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(q[r][i], q[r][j]);
        std::swap(qinv[i], qinv[j]);
    };
    // col j -= f * col i  (A -> A·E with E = I - f·e_i e_jᵀ)
    auto col_sub = [&](size_t j, const Int& f, size_t i) {
        for (size_t r = 0; r < n; ++r) a[r][j] -= f * a[r][i];
        for (size_t r = 0; r < n; ++r) q[r][j] -= f * q[r][i];
        for (size_t c = 0; c < n; ++c) qinv[i][c] += f * qinv[j][c];
    };

    for (size_t t = 0; t < n; ++t) {
        while (true) {
            size_t br = n, bc = n;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 &&
                        (br == n || cmp(abs(a[i][j]), abs(a[br][bc])) < 0)) {
                        br = i;
                        bc = j;
                    }
            if (br == n) throw std::invalid_argument("smith_normal_form: singular matrix");
            if (br != t) std::swap(a[br], a[t]);
            if (bc != t) col_swap(bc, t);

            bool clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (size_t j = t; j < n; ++j) a[i][j] -= f * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_sub(j, f, t);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce divisibility of the remaining block by the pivot.
            bool fixed = false;
            for (size_t i = t + 1; i < n && !fixed; ++i)
                for (size_t j = t + 1; j < n && !fixed; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (size_t c = t; c < n; ++c) a[t][c] += a[i][c];
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (a[t][t] < 0)
            for (size_t j = t; j < n; ++j) a[t][j] = -a[t][j];
    }

    Snf s;
    s.diag.resize(n);
    for (size_t i = 0; i < n; ++i) s.diag[i] = a[i][i];
    s.q = std::move(q);
    s.qinv = std::move(qinv);
    return s;
}

Mat rational_row_basis(const Mat& rows) {
    Int den(1);
    for (const auto& r : rows)
        for (const auto& e : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den().get_mpz_t());
    IMat scaled(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        scaled[i].reserve(rows[i].size());
        for (const auto& e : rows[i]) {
            Rat t = e * den;
            scaled[i].push_back(t.get_num());
        }
    }
    IMat h = hnf_row_basis(std::move(scaled));
    Mat out(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
        out[i].reserve(h[i].size());
        for (const auto& e : h[i]) out[i].push_back(Rat(e) / den);
    }
    return out;
}

}  // namespace latfusion
