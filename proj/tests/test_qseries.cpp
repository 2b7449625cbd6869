#include <stdexcept>

#include "doctest.h"
#include "latfusion/lattice.hpp"
#include "latfusion/qseries.hpp"

using namespace latfusion;

namespace {

QSeries from_pairs(const Rat& cutoff, std::initializer_list<std::pair<Rat, Rat>> ts) {
    QSeries s(cutoff);
    for (const auto& [e, c] : ts) s.add_term(e, c);
    return s;
}

}  // namespace

TEST_CASE("series arithmetic") {
    QSeries a = from_pairs(Rat(6), {{Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
    QSeries b = from_pairs(Rat(6), {{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}});
    QSeries p = a * b;
    CHECK(p.coeff(Rat(0)) == 1);
    CHECK(p.coeff(Rat(1)) == 0);
    CHECK(p.coeff(Rat(2)) == -1);
    CHECK((a - a).is_zero());
    CHECK(Rat(3) * a == a + a + a);
    QSeries shallow = from_pairs(Rat(2), {{Rat(0), Rat(1)}});
    CHECK((a * shallow).cutoff() == 2);  // cutoff is the min of the factors
    CHECK(qs_pow(a, 2) == a * a);
    CHECK(qs_pow(a, 0) == qs_constant(Rat(1), Rat(6)));
    CHECK(to_string(a * b) == "1 - q^2");
    CHECK(to_string(qs_constant(Rat(0), Rat(4))) == "0");
}

TEST_CASE("half integral exponents print with parentheses") {
    QSeries s = from_pairs(Rat(3), {{rat(1, 2), Rat(2)}, {rat(5, 2), Rat(-7)}});
    CHECK(to_string(s) == "2*q^(1/2) - 7*q^(5/2)");
    CHECK(qs_shift(s, rat(1, 2)).coeff(Rat(1)) == 2);
}

TEST_CASE("inversion against the unit") {
    QSeries f = phi(Rat(1), Rat(12));
    QSeries g = qs_invert(f);
    QSeries one = f * g;
    CHECK(one.coeff(Rat(0)) == 1);
    for (int k = 1; k <= 12; ++k) CHECK(one.coeff(Rat(k)) == 0);
    CHECK_THROWS_AS(qs_invert(from_pairs(Rat(3), {{Rat(1), Rat(1)}})),
                    std::invalid_argument);
}

TEST_CASE("euler function expansions") {
    // pentagonal number pattern
    QSeries f = phi(Rat(1), Rat(13));
    CHECK(f == from_pairs(Rat(13), {{Rat(0), Rat(1)},
                                    {Rat(1), Rat(-1)},
                                    {Rat(2), Rat(-1)},
                                    {Rat(5), Rat(1)},
                                    {Rat(7), Rat(1)},
                                    {Rat(12), Rat(-1)}}));
    QSeries f2 = phi(Rat(2), Rat(11));
    CHECK(f2 == from_pairs(Rat(11), {{Rat(0), Rat(1)},
                                     {Rat(2), Rat(-1)},
                                     {Rat(4), Rat(-1)},
                                     {Rat(10), Rat(1)}}));
    QSeries fh = phi(rat(1, 2), Rat(3));
    CHECK(fh == from_pairs(Rat(3), {{Rat(0), Rat(1)},
                                    {rat(1, 2), Rat(-1)},
                                    {Rat(1), Rat(-1)},
                                    {rat(5, 2), Rat(1)}}));
    CHECK_THROWS_AS(phi(Rat(1), Rat(0)), std::invalid_argument);
}

TEST_CASE("first mismatch") {
    QSeries a = from_pairs(Rat(8), {{Rat(0), Rat(1)}, {Rat(3), Rat(5)}});
    QSeries b = from_pairs(Rat(8), {{Rat(0), Rat(1)}, {Rat(3), Rat(4)}});
    auto m = first_mismatch(a, b, Rat(8));
    REQUIRE(m.has_value());
    CHECK(*m == 3);
    CHECK(!first_mismatch(a, a, Rat(8)).has_value());
    CHECK(!first_mismatch(a, b, Rat(2)).has_value());
}

TEST_CASE("theta series of classical lattices") {
    QSeries e8 = theta_series(builtin("E8").zero_coset(), Rat(3));
    CHECK(e8 == from_pairs(Rat(3), {{Rat(0), Rat(1)},
                                    {Rat(1), Rat(240)},
                                    {Rat(2), Rat(2160)},
                                    {Rat(3), Rat(6720)}}));
    QSeries s8 = theta_series(builtin("sqrt2E8").zero_coset(), Rat(5));
    CHECK(s8.coeff(Rat(1)) == 0);
    CHECK(s8.coeff(Rat(2)) == 240);
    CHECK(s8.coeff(Rat(4)) == 2160);
    QSeries bw = theta_series(builtin("BW16").zero_coset(), Rat(3));
    CHECK(bw == from_pairs(Rat(3), {{Rat(0), Rat(1)},
                                    {Rat(2), Rat(4320)},
                                    {Rat(3), Rat(61440)}}));
}

TEST_CASE("theta exponents can be half integral on dual cosets") {
    Lattice L = builtin("sqrt2E8");
    // the dual of sqrt2E8 rescales E8 down; its minimal vectors have norm 1
    QSeries d = theta_series(L.dual().zero_coset(), Rat(2));
    CHECK(d.coeff(rat(1, 2)) == 240);
}

TEST_CASE("twisted module dimensions") {
    CHECK(twisted_module_dim(builtin("sqrt2E8")) == 1);
    CHECK(twisted_module_dim(builtin("BW16")) == 16);
    CHECK(twisted_module_dim(builtin("unimodular24")) == 4096);
    CHECK_THROWS_AS(twisted_module_dim(builtin("sqrt2D4")), std::invalid_argument);
}

TEST_CASE("graded dimensions, rank 8") {
    Lattice L = builtin("sqrt2E8");
    QSeries plus = graded_dim_zero(L, +1, Rat(3));
    CHECK(plus.coeff(Rat(0)) == 1);
    CHECK(plus.coeff(Rat(1)) == 0);
    CHECK(plus.coeff(Rat(2)) == 156);
    QSeries minus = graded_dim_zero(L, -1, Rat(3));
    CHECK(minus.coeff(Rat(0)) == 0);
    CHECK(minus.coeff(Rat(1)) == 8);
    CHECK(minus.coeff(Rat(2)) == 128);
    QSeries tp = graded_dim_twisted(L, +1, Rat(3));
    CHECK(tp.coeff(rat(1, 2)) == 1);
    CHECK(tp.coeff(rat(3, 2)) == 36);
    QSeries tm = graded_dim_twisted(L, -1, Rat(3));
    CHECK(tm.coeff(Rat(1)) == 8);
}

TEST_CASE("graded dimensions, rank 16") {
    Lattice L = builtin("BW16");
    QSeries minus = graded_dim_zero(L, -1, Rat(2));
    CHECK(minus.coeff(Rat(1)) == 16);
    CHECK(minus.coeff(Rat(2)) == 2176);
    QSeries tp = graded_dim_twisted(L, +1, Rat(2));
    CHECK(tp.coeff(Rat(1)) == 16);
    CHECK(tp.coeff(Rat(2)) == 2176);
    QSeries tm = graded_dim_twisted(L, -1, Rat(2));
    CHECK(tm.coeff(rat(3, 2)) == 256);
}

TEST_CASE("signed classes ignore the sign and track the coset minimum") {
    Lattice L = builtin("sqrt2E8");
    for (size_t i : {1u, 5u, 17u}) {
        Coset c = two_torsion_cosets(L)[i];
        QSeries a = graded_dim_signed(c, +1, Rat(3));
        CHECK(a == graded_dim_signed(c, -1, Rat(3)));
        MinNorm mn = min_norm(c);
        CHECK(a.coeff(mn.norm / 2) == Rat(static_cast<long>(mn.count)) / 2);
        for (const auto& [e, coef] : a.terms()) {
            CHECK(coef > 0);
            CHECK(is_integer(coef));
            CHECK(e >= mn.norm / 2);
        }
    }
}

TEST_CASE("zero class splits the untwisted character") {
    for (const char* name : {"sqrt2E8", "BW16"}) {
        Lattice L = builtin(name);
        unsigned n = L.rank();
        Rat cut(6);
        QSeries plus = graded_dim_zero(L, +1, cut);
        QSeries minus = graded_dim_zero(L, -1, cut);
        QSeries theta = theta_series(L.zero_coset(), cut);
        QSeries inv_phi_n = qs_invert(qs_pow(phi(Rat(1), cut), n));
        QSeries sum = plus + minus;
        CHECK(sum == theta * inv_phi_n);
        QSeries ratio = qs_pow(phi(Rat(1), cut), n) * qs_invert(qs_pow(phi(Rat(2), cut), n));
        CHECK(plus - minus == ratio);
        for (const auto& [e, coef] : sum.terms()) {
            CHECK(coef >= 0);
            CHECK(is_integer(coef));
        }
    }
}

TEST_CASE("pair classes halve the coset theta") {
    Lattice L = builtin("sqrt2D4");
    // pick a coset with 2λ ∉ L from the discriminant group generators
    const DiscriminantGroup& dg = L.discriminant_group();
    const Coset* pair = nullptr;
    for (const Coset& g : dg.generators)
        if (!coset_eq(L.coset([&] {
                Vec v = g.shift;
                for (auto& e : v) e *= 2;
                return v;
            }()),
                      L.zero_coset()))
            pair = &g;
    REQUIRE(pair != nullptr);
    QSeries d = graded_dim_pair(*pair, Rat(4));
    QSeries theta = theta_series(*pair, Rat(4));
    QSeries inv_phi = qs_invert(qs_pow(phi(Rat(1), Rat(4)), 4));
    CHECK(d == theta * inv_phi);
}

TEST_CASE("theta identity certificates") {
    CHECK(verify_theta_identity(builtin("sqrt2E8"), Rat(10)));
    ThetaIdentityCheck bw = check_theta_identity(builtin("BW16"), Rat(5));
    CHECK(bw.ok);
    CHECK(bw.dual_cutoff == 4);  // rank 16 dual side is capped
    ThetaIdentityCheck wrong = check_theta_identity(builtin("sqrt2E8"), Rat(6), 2);
    CHECK(!wrong.ok);
    REQUIRE(wrong.mismatch_at.has_value());
    CHECK(*wrong.mismatch_at <= 2);
    CHECK_THROWS_AS(check_theta_identity(builtin("E8"), Rat(6)), std::invalid_argument);
    CHECK_THROWS_AS(check_theta_identity(builtin("sqrt2D4"), Rat(6)),
                    std::invalid_argument);
}

TEST_CASE("twisted characters need the two-torsion structure") {
    CHECK_THROWS_AS(graded_dim_twisted(builtin("A2"), +1, Rat(3)), std::invalid_argument);
}
