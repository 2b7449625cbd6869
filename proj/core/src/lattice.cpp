#include "latfusion/lattice.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace latfusion {

namespace {

Int lcm_denominators(const Mat& m) {
    Int l(1);
    for (const auto& row : m)
        for (const auto& e : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den().get_mpz_t());
    return l;
}

// LDL pivots of a symmetric matrix; exact. Throws if a pivot is not positive,
// which catches both dependent basis rows and indefinite forms.
Vec ldl_pivots_checked(const Mat& g) {
    size_t n = g.size();
    Mat u(n, Vec(n, Rat(0)));
    Vec p(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        Rat pi = g[i][i];
        for (size_t k = 0; k < i; ++k) pi -= p[k] * u[k][i] * u[k][i];
        if (pi <= 0)
            throw std::invalid_argument(
                "lattice basis rows are dependent or the form is not positive definite");
        p[i] = pi;
        for (size_t j = i + 1; j < n; ++j) {
            Rat t = g[i][j];
            for (size_t k = 0; k < i; ++k) t -= p[k] * u[k][i] * u[k][j];
            u[i][j] = t / pi;
        }
    }
    return p;
}

}  // namespace

Lattice::Lattice(std::string name, Mat basis, Rat metric_scale) {
    auto d = std::make_shared<Data>();
    d->name = std::move(name);
    if (basis.empty()) throw std::invalid_argument("lattice basis must be nonempty");
    d->rank = static_cast<int>(basis.size());
    d->ambient = static_cast<int>(basis[0].size());
    for (const auto& row : basis)
        if (static_cast<int>(row.size()) != d->ambient)
            throw std::invalid_argument("lattice basis rows have unequal lengths");
    if (d->ambient < d->rank)
        throw std::invalid_argument("lattice basis has more rows than columns");
    if (metric_scale <= 0) throw std::invalid_argument("metric scale must be positive");
    d->basis = std::move(basis);
    d->scale = std::move(metric_scale);

    d->gram = mat_scale(d->scale, mat_mul(d->basis, mat_transpose(d->basis)));
    Vec pivots = ldl_pivots_checked(d->gram);
    d->det = 1;
    for (const auto& p : pivots) d->det *= p;

    d->integral = true;
    d->even = true;
    for (int i = 0; i < d->rank; ++i)
        for (int j = 0; j < d->rank; ++j) {
            if (!is_integer(d->gram[i][j])) d->integral = false;
            if (i == j && d->gram[i][j].get_num() % 2 != 0) d->even = false;
        }
    d->even = d->even && d->integral;

    d->dual = mat_mul(mat_inverse(d->gram), d->basis);

    d->gram_den = lcm_denominators(d->gram);
    IMat gnum(d->rank, std::vector<Int>(d->rank));
    for (int i = 0; i < d->rank; ++i)
        for (int j = 0; j < d->rank; ++j) {
            Rat t = d->gram[i][j] * d->gram_den;
            gnum[i][j] = t.get_num();
        }
    d->snf = smith_normal_form(std::move(gnum));
    d_ = std::move(d);
}

Lattice Lattice::dual() const { return Lattice(d_->name + "*", d_->dual, d_->scale); }

Rat Lattice::inner(const Vec& a, const Vec& b) const { return d_->scale * dot(a, b); }

std::optional<Vec> Lattice::coords(const Vec& v) const {
    if (static_cast<int>(v.size()) != d_->ambient)
        throw std::invalid_argument("vector has wrong ambient dimension");
    Vec x(d_->rank);
    for (int j = 0; j < d_->rank; ++j) x[j] = inner(v, d_->dual[j]);
    if (row_times_mat(x, d_->basis) != v) return std::nullopt;
    return x;
}

bool Lattice::in_span(const Vec& v) const { return coords(v).has_value(); }

bool Lattice::contains(const Vec& v) const {
    auto x = coords(v);
    if (!x) return false;
    for (const auto& e : *x)
        if (!is_integer(e)) return false;
    return true;
}

bool Lattice::dual_contains(const Vec& v) const {
    if (!in_span(v)) return false;
    for (int j = 0; j < d_->rank; ++j)
        if (!is_integer(inner(v, d_->basis[j]))) return false;
    return true;
}

Coset Lattice::coset(const Vec& shift) const {
    auto x = coords(shift);
    if (!x) throw std::invalid_argument("coset shift lies outside the lattice span");
    int n = d_->rank;
    // dual-basis coordinates of the shift; L maps to the row lattice of the
    // Gram matrix in these coordinates
    Vec y = row_times_mat(*x, d_->gram);
    Vec w(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        Rat acc(0);
        for (int i = 0; i < n; ++i)
            if (d_->snf.q[i][j] != 0) acc += y[i] * d_->gram_den * d_->snf.q[i][j];
        w[j] = acc;
    }
    for (int i = 0; i < n; ++i) {
        Rat di(d_->snf.diag[i]);
        w[i] -= di * Rat(floor_rat(w[i] / di));
    }
    Vec y2(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        Rat acc(0);
        for (int i = 0; i < n; ++i)
            if (d_->snf.qinv[i][j] != 0) acc += w[i] * d_->snf.qinv[i][j];
        y2[j] = acc / d_->gram_den;
    }
    Coset c{*this, row_times_mat(y2, d_->dual), std::move(w)};
    return c;
}

Coset Lattice::zero_coset() const { return coset(Vec(d_->ambient, Rat(0))); }

const DiscriminantGroup& Lattice::discriminant_group() const {
    if (!d_->integral)
        throw std::domain_error("discriminant group requires an integral Gram matrix");
    if (!d_->disc) {
        auto g = std::make_shared<DiscriminantGroup>();
        g->order = 1;
        int n = d_->rank;
        for (int i = 0; i < n; ++i) {
            const Int& di = d_->snf.diag[i];
            if (di == 1) continue;
            g->invariant_factors.push_back(di);
            g->order *= di;
            Vec y(n, Rat(0));
            for (int j = 0; j < n; ++j) y[j] = Rat(d_->snf.qinv[i][j]);
            g->generators.push_back(coset(row_times_mat(y, d_->dual)));
        }
        d_->disc = std::move(g);
    }
    return *d_->disc;
}

bool Lattice::is_2elementary_totally_even() const {
    if (!d_->integral) return false;
    for (const auto& di : d_->snf.diag)
        if (di != 1 && di != 2) return false;
    for (const auto& c : two_torsion_cosets(*this))
        if (!is_integer(c.norm())) return false;
    return true;
}

bool Lattice::operator==(const Lattice& other) const {
    if (d_ == other.d_) return true;
    return d_->scale == other.d_->scale && d_->basis == other.d_->basis;
}

bool Coset::is_zero() const {
    for (const auto& e : key)
        if (e != 0) return false;
    return true;
}

Rat Coset::norm() const { return lattice.inner(shift, shift); }

std::vector<Coset> two_torsion_cosets(const Lattice& L) {
    const auto& dg = L.discriminant_group();
    std::vector<Vec> halves;
    for (size_t i = 0; i < dg.invariant_factors.size(); ++i)
        if (dg.invariant_factors[i] % 2 == 0) {
            Rat h = Rat(dg.invariant_factors[i]) / 2;
            halves.push_back(vec_scale(h, dg.generators[i].shift));
        }
    if (halves.size() > 24)
        throw std::domain_error("two-torsion group too large to enumerate");
    std::vector<Coset> out;
    out.reserve(size_t(1) << halves.size());
    int m = L.ambient_dim();
    for (size_t mask = 0; mask < (size_t(1) << halves.size()); ++mask) {
        Vec s(m, Rat(0));
        for (size_t i = 0; i < halves.size(); ++i)
            if (mask >> i & 1) s = vec_add(s, halves[i]);
        out.push_back(L.coset(s));
    }
    return out;
}

Coset coset_add(const Coset& a, const Coset& b) {
    if (!(a.lattice == b.lattice))
        throw std::invalid_argument("coset_add: cosets belong to different lattices");
    return a.lattice.coset(vec_add(a.shift, b.shift));
}

bool coset_eq(const Coset& a, const Coset& b) {
    return a.lattice == b.lattice && a.key == b.key;
}

std::string lattice_to_json(const Lattice& L) {
    nlohmann::ordered_json j;
    j["name"] = L.name();
    Int den = lcm_denominators(L.basis());
    j["denominator"] = to_long(den);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : L.basis()) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& e : row) {
            Rat t = e * den;
            r.push_back(to_long(t.get_num()));
        }
        rows.push_back(std::move(r));
    }
    j["basis"] = std::move(rows);
    j["metric_scale"] = {to_long(L.metric_scale().get_num()),
                         to_long(L.metric_scale().get_den())};
    return j.dump(2);
}

Lattice lattice_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid lattice JSON: ") + e.what());
    }
    try {
        std::string name = j.at("name").get<std::string>();
        long long den = j.at("denominator").get<long long>();
        if (den <= 0) throw std::invalid_argument("denominator must be positive");
        Mat basis;
        for (const auto& row : j.at("basis")) {
            Vec r;
            for (const auto& e : row) r.push_back(rat(e.get<long long>(), den));
            basis.push_back(std::move(r));
        }
        const auto& ms = j.at("metric_scale");
        if (!ms.is_array() || ms.size() != 2)
            throw std::invalid_argument("metric_scale must be [num, den]");
        Rat scale = rat(ms[0].get<long long>(), ms[1].get<long long>());
        return Lattice(std::move(name), std::move(basis), scale);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid lattice JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("invalid lattice JSON: ") + e.what());
    }
}

Lattice load_lattice_target(const std::string& target) {
    const std::string prefix = "builtin:";
    if (target.rfind(prefix, 0) == 0) return builtin(target.substr(prefix.size()));
    std::ifstream f(target);
    if (!f) throw std::runtime_error("cannot read lattice file: " + target);
    std::ostringstream ss;
    ss << f.rdbuf();
    return lattice_from_json(ss.str());
}

}  // namespace latfusion
