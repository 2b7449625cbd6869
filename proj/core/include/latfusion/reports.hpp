#pragma once

#include <string>
#include <vector>

#include "latfusion/numeric.hpp"

namespace latfusion {

// One row of the Aut(V^+_{√2R}) order table. The computed order is
// |Q| · 2^{rank-1} · |O(R)| and is checked against the printed group shape.
struct AutOrderRow {
    std::string name;  // root lattice R
    int rank = 0;
    Int o_order;               // |O(R)| = |O(√2R)|
    std::string o_source;      // "search" (rank <= 4) or "table"
    long long q_size = 0;      // |Q_{√2R}| from the orbit computation
    long long q_expected = 0;
    Int aut_order;
    std::string shape;
    Int shape_order;           // group_order(shape)
    bool match = false;
    std::string alt_shape;     // D_n only: the rejected power candidate
    Int alt_order;
    bool alt_match = false;
};

struct RootTableReport {
    std::vector<AutOrderRow> rows;
    bool all_match = false;
};

// A1 A2 A3 A4 D4 D5 D6 E6 E7 E8.
RootTableReport root_table();

// The rank-24 even rootless unimodular case: trivial orbit, no twisted
// classes in it, no Construction-B structure, Aut = 2^23 · |O(L)|.
struct UnimodularReport {
    std::string name;
    int rank = 0;
    Rat det;
    Rat min_norm;
    long long q_size = 0;
    bool q_trivial = false;
    bool twisted_in_orbit = false;
    bool has_construction_b = false;
    Int o_order;  // |O(L)|, from the table
    Int aut_order;
    bool ok = false;
};

UnimodularReport unimodular_report();

// Rank-16 exceptional case: 527 = isotropic count of the dim-10 plus space,
// and 527 · 2^15 · |O(Λ16)| = 2^16 · |Ω+_10(2)|.
struct Bw16Report {
    long long q_size = 0;
    long long isotropic = 0;
    Int o_order;
    Int h_order;    // stabilizer of [0]^-: 2^15 · |O(Λ16)|
    Int aut_order;  // q_size · h_order
    std::string shape;
    Int shape_order;
    bool match = false;
};

Bw16Report bw16_report();

std::string render_text(const RootTableReport& r);
std::string render_text(const UnimodularReport& r);
std::string render_text(const Bw16Report& r);

std::string render_json(const RootTableReport& r);
std::string render_json(const UnimodularReport& r);
std::string render_json(const Bw16Report& r);

}  // namespace latfusion
