#include <cstdlib>
#include <stdexcept>
#include <string>

#include "latfusion/constructions.hpp"
#include "latfusion/f2algebra.hpp"
#include "latfusion/lattice.hpp"

namespace latfusion {

namespace {

Mat a_basis(int n) {
    Mat b(n, Vec(n + 1, Rat(0)));
    for (int i = 0; i < n; ++i) {
        b[i][i] = 1;
        b[i][i + 1] = -1;
    }
    return b;
}

Mat d_basis(int n) {
    Mat b(n, Vec(n, Rat(0)));
    for (int i = 0; i + 1 < n; ++i) {
        b[i][i] = 1;
        b[i][i + 1] = -1;
    }
    b[n - 1][n - 2] = 1;
    b[n - 1][n - 1] = 1;
    return b;
}

// Bourbaki simple roots of E8; E7 and E6 are the leading subsets.
Mat e_basis(int n) {
    Mat b(n, Vec(8, Rat(0)));
    b[0][0] = rat(1, 2);
    b[0][7] = rat(1, 2);
    for (int k = 1; k <= 6; ++k) b[0][k] = rat(-1, 2);
    b[1][0] = 1;
    b[1][1] = 1;
    if (n > 2) {
        b[2][0] = -1;
        b[2][1] = 1;
    }
    for (int i = 3; i < n; ++i) {
        b[i][i - 2] = -1;
        b[i][i - 1] = 1;
    }
    return b;
}

Lattice leech() {
    BinaryCode g = extended_golay();
    Mat rows;
    Vec odd(24, Rat(1));
    odd[0] = -3;
    rows.push_back(odd);
    for (uint32_t w : g.rref) {
        Vec v(24, Rat(0));
        for (int i = 0; i < 24; ++i)
            if (w >> i & 1) v[i] = 2;
        rows.push_back(std::move(v));
    }
    for (int j = 1; j < 24; ++j) {
        Vec v(24, Rat(0));
        v[0] = 4;
        v[j] = 4;
        rows.push_back(std::move(v));
    }
    Vec v8(24, Rat(0));
    v8[0] = 8;
    rows.push_back(std::move(v8));
    return Lattice("unimodular24", rational_row_basis(rows), rat(1, 8));
}

}  // namespace

Lattice builtin(const std::string& name) {
    std::string base = name;
    Rat scale(1);
    if (base.rfind("sqrt2", 0) == 0) {
        base = base.substr(5);
        scale = 2;
    }
    auto parse_index = [&](size_t off, int lo, int hi) {
        if (base.size() <= off) return -1;
        char* end = nullptr;
        long v = std::strtol(base.c_str() + off, &end, 10);
        if (end == base.c_str() + off || *end != '\0') return -1;
        if (v < lo || v > hi) return -1;
        return static_cast<int>(v);
    };
    if (!base.empty() && base[0] == 'A') {
        int n = parse_index(1, 1, 24);
        if (n > 0) return Lattice(name, a_basis(n), scale);
    }
    if (!base.empty() && base[0] == 'D') {
        int n = parse_index(1, 2, 24);
        if (n > 0) return Lattice(name, d_basis(n), scale);
    }
    if (base == "E6" || base == "E7" || base == "E8")
        return Lattice(name, e_basis(base[1] - '0'), scale);
    if (scale == 1 && base == "BW16") {
        LbResult r = lb_from_code(rm_1_4());
        return Lattice(name, r.lattice.basis(), r.lattice.metric_scale());
    }
    if (scale == 1 && base == "unimodular24") return leech();
    throw std::invalid_argument("unknown builtin lattice: " + name);
}

Int isometry_search(const Lattice& L) {
    int n = L.rank();
    if (n > 4) throw std::invalid_argument("isometry_search limited to rank <= 4");
    std::vector<std::vector<Vec>> cand(n);
    Coset zero = L.zero_coset();
    for (int i = 0; i < n; ++i) cand[i] = vectors_of_norm(zero, L.gram()[i][i]);

    Int count = 0;
    std::vector<const Vec*> img(n, nullptr);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            ++count;
            return;
        }
        for (const auto& v : cand[i]) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = L.inner(*img[j], v) == L.gram()[j][i];
            if (!ok) continue;
            img[i] = &v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace latfusion
