#include "latfusion/permgroup.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace latfusion {

namespace {

constexpr int kMaxDegree = 4096;

int min_moved(const Perm& p) {
    for (int x = 0; x < static_cast<int>(p.size()); ++x)
        if (p[x] != x) return x;
    return -1;  // identity
}

void check_perm(const Perm& p, int degree) {
    if (static_cast<int>(p.size()) != degree)
        throw std::invalid_argument("permutation degree mismatch");
    std::vector<char> seen(degree, 0);
    for (uint16_t img : p) {
        if (img >= degree || seen[img])
            throw std::invalid_argument("not a permutation");
        seen[img] = 1;
    }
}

// Chain under construction, keyed by base point so insertion keeps the
// base increasing. A strong generator lives at the level of its first
// moved point; the generators acting at level p are exactly those stored
// at points >= p, since they fix everything below their own level.
struct Builder {
    int degree;
    std::map<int, PermGroup::Level> levels;

    std::vector<const Perm*> gens_at(int point) const {
        std::vector<const Perm*> out;
        for (auto it = levels.lower_bound(point); it != levels.end(); ++it)
            for (const Perm& g : it->second.strong) out.push_back(&g);
        return out;
    }

    void rebuild_orbit(PermGroup::Level& lv) {
        std::vector<const Perm*> gens = gens_at(lv.point);
        lv.orbit.assign(1, lv.point);
        lv.where.assign(degree, -1);
        lv.where[lv.point] = 0;
        lv.trans.assign(1, perm_identity(degree));
        lv.trans_inv = lv.trans;
        for (size_t i = 0; i < lv.orbit.size(); ++i) {
            int pt = lv.orbit[i];
            for (const Perm* g : gens) {
                int img = (*g)[pt];
                if (lv.where[img] >= 0) continue;
                lv.where[img] = static_cast<int>(lv.orbit.size());
                lv.orbit.push_back(img);
                lv.trans.push_back(perm_compose(*g, lv.trans[i]));
                lv.trans_inv.push_back(perm_inverse(lv.trans.back()));
            }
        }
    }

    // Strip p through all levels at points > from; identity result means
    // membership in the point stabilizer below `from`.
    Perm sift(Perm p, int from) const {
        for (auto it = levels.upper_bound(from); it != levels.end(); ++it) {
            const PermGroup::Level& lv = it->second;
            int img = p[lv.point];
            if (img == lv.point) continue;
            if (lv.where[img] < 0) return p;
            p = perm_compose(lv.trans_inv[lv.where[img]], p);
        }
        return p;
    }

    // Returns the level the residue was filed under.
    int add_strong(Perm p) {
        int pt = min_moved(p);
        levels[pt].point = pt;
        levels[pt].strong.push_back(std::move(p));
        return pt;
    }
};

}  // namespace

Perm perm_identity(int degree) {
    Perm p(degree);
    for (int i = 0; i < degree; ++i) p[i] = static_cast<uint16_t>(i);
    return p;
}

bool perm_is_identity(const Perm& p) { return min_moved(p) == -1; }

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm out(b.size());
    for (size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

Perm perm_inverse(const Perm& a) {
    Perm out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<uint16_t>(i);
    return out;
}

std::vector<int> PermGroup::base() const {
    std::vector<int> out;
    for (const Level& lv : chain)
        if (lv.orbit.size() > 1) out.push_back(lv.point);
    return out;
}

bool PermGroup::contains(const Perm& p) const {
    if (static_cast<int>(p.size()) != degree) return false;
    Perm r = p;
    for (const Level& lv : chain) {
        int img = r[lv.point];
        if (img == lv.point) continue;
        if (lv.where[img] < 0) return false;
        r = perm_compose(lv.trans_inv[lv.where[img]], r);
    }
    return perm_is_identity(r);
}

PermGroup schreier_sims(const std::vector<Perm>& gens, int degree) {
    if (degree < 0) {
        if (gens.empty())
            throw std::invalid_argument("degree required for an empty generator list");
        degree = static_cast<int>(gens[0].size());
    }
    if (degree <= 0 || degree > kMaxDegree)
        throw std::invalid_argument("degree out of range");

    PermGroup out;
    out.degree = degree;

    Builder b;
    b.degree = degree;
    for (const Perm& g : gens) {
        check_perm(g, degree);
        if (perm_is_identity(g)) continue;
        out.generators.push_back(g);
        b.add_strong(g);
    }

    // Verify bottom-up: a level is settled once every Schreier generator of
    // its orbit sifts to the identity through the deeper levels. A surviving
    // residue fixes everything up to the current point, so it files strictly
    // deeper; re-verify from there since the levels in between now see it.
    std::vector<int> points;
    for (const auto& [pt, lv] : b.levels) points.push_back(pt);
    int idx = static_cast<int>(points.size()) - 1;
    while (idx >= 0) {
        PermGroup::Level& lv = b.levels.at(points[idx]);
        b.rebuild_orbit(lv);
        std::vector<const Perm*> gens_here = b.gens_at(lv.point);
        bool clean = true;
        for (size_t i = 0; clean && i < lv.orbit.size(); ++i) {
            for (const Perm* g : gens_here) {
                int img = (*g)[lv.orbit[i]];
                Perm schreier = perm_compose(lv.trans_inv[lv.where[img]],
                                             perm_compose(*g, lv.trans[i]));
                if (perm_is_identity(schreier)) continue;
                Perm residue = b.sift(std::move(schreier), lv.point);
                if (perm_is_identity(residue)) continue;
                int filed = b.add_strong(std::move(residue));
                points.clear();
                for (const auto& [pt2, lv2] : b.levels) points.push_back(pt2);
                idx = static_cast<int>(std::lower_bound(points.begin(), points.end(),
                                                        filed) -
                                       points.begin());
                clean = false;
                break;
            }
        }
        if (clean) --idx;
    }

    out.order = 1;
    for (auto& [pt, lv] : b.levels) {
        out.order *= static_cast<long>(lv.orbit.size());
        out.chain.push_back(std::move(lv));
    }
    return out;
}

std::vector<Perm> transvection_generators(const F2QuadSpace& q) {
    if (!is_nondegenerate(q))
        throw std::invalid_argument("transvections need a nondegenerate form");
    if (q.dim > 12)
        throw std::invalid_argument("transvection degree exceeds 4096");
    uint32_t n = uint32_t{1} << q.dim;
    std::vector<Perm> out;
    for (uint32_t v = 1; v < n; ++v) {
        if (q.q(v) != 1) continue;
        Perm p(n);
        for (uint32_t x = 0; x < n; ++x)
            p[x] = static_cast<uint16_t>(q.bilin(x, v) ? x ^ v : x);
        for (uint32_t x = 0; x < n; ++x)
            if (q.q(p[x]) != q.q(x))
                throw std::logic_error("transvection fails to preserve the form");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<long long> orbit_sizes(const PermGroup& g) {
    std::vector<char> seen(g.degree, 0);
    std::vector<long long> sizes;
    for (int start = 0; start < g.degree; ++start) {
        if (seen[start]) continue;
        std::vector<int> queue{start};
        seen[start] = 1;
        for (size_t i = 0; i < queue.size(); ++i)
            for (const Perm& gen : g.generators) {
                int img = gen[queue[i]];
                if (!seen[img]) {
                    seen[img] = 1;
                    queue.push_back(img);
                }
            }
        sizes.push_back(static_cast<long long>(queue.size()));
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

Int stabilizer_order(const PermGroup& g, int point) {
    if (point < 0 || point >= g.degree)
        throw std::invalid_argument("point out of range");
    std::vector<char> seen(g.degree, 0);
    std::vector<int> queue{point};
    seen[point] = 1;
    for (size_t i = 0; i < queue.size(); ++i)
        for (const Perm& gen : g.generators) {
            int img = gen[queue[i]];
            if (!seen[img]) {
                seen[img] = 1;
                queue.push_back(img);
            }
        }
    Int len(static_cast<long>(queue.size()));
    Int quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), g.order.get_mpz_t(),
                len.get_mpz_t());
    if (rem != 0)
        throw std::logic_error("orbit length does not divide the group order");
    return quot;
}

}  // namespace latfusion
