#include "latfusion/reports.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "latfusion/constructions.hpp"
#include "latfusion/f2algebra.hpp"
#include "latfusion/lattice.hpp"
#include "latfusion/modcat.hpp"

namespace latfusion {

namespace {

using json = nlohmann::ordered_json;

struct RowSpec {
    const char* name;
    int rank;
    long o_order;  // |O(R)|; recomputed by search when rank <= 4
    long long q_expected;
    const char* shape;
    const char* alt_shape;  // D_n second reading of the 2-power, or ""
};

// |O(A_n)| = 2(n+1)! except A1, |O(D_n)| = 2^n n! except D4 (1152),
// |O(E6)| = 103680, |O(E7)| = 2903040, |O(E8)| = 696729600.
constexpr RowSpec kRows[] = {
    {"A1", 1, 2, 1, "2", ""},
    {"A2", 2, 12, 1, "2^2:Sym_3", ""},
    {"A3", 3, 48, 3, "(2^2:Sym_4).Sym_3", ""},
    {"A4", 4, 240, 1, "2^4:Sym_5", ""},
    {"D4", 4, 1152, 7, "(2^4:Sym_4).GL_3(2)", ""},
    {"D5", 5, 3840, 3, "(2^8:Sym_5).Sym_3", "(2^7:Sym_5).Sym_3"},
    {"D6", 6, 46080, 3, "(2^10:Sym_6).Sym_3", "(2^9:Sym_6).Sym_3"},
    {"E6", 6, 103680, 1, "2^6:U_4(2):2", ""},
    {"E7", 7, 2903040, 1, "2^7:Sp_6(2)", ""},
    {"E8", 8, 696729600, 527, "O+_10(2)", ""},
};

// |O(Λ24)| = |Co_0|.
const char* kLeechOOrder = "8315553613086720000";
// |O(Λ16)|, shared with the E8 row's stabilizer via 527 · 2^15 · |O|.
const char* kBw16OOrder = "89181388800";

Int pow2(int e) {
    Int out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return out;
}

}  // namespace

RootTableReport root_table() {
    RootTableReport out;
    out.all_match = true;
    for (const RowSpec& spec : kRows) {
        AutOrderRow row;
        row.name = spec.name;
        row.rank = spec.rank;
        row.q_expected = spec.q_expected;
        if (spec.rank <= 4) {
            row.o_order = isometry_search(builtin(spec.name));
            row.o_source = "search";
        } else {
            row.o_order = Int(spec.o_order);
            row.o_source = "table";
        }
        row.q_size =
            static_cast<long long>(orbit_QL(builtin(std::string("sqrt2") + spec.name)).size());
        row.aut_order = Int(static_cast<long>(row.q_size)) * pow2(spec.rank - 1) * row.o_order;
        row.shape = spec.shape;
        row.shape_order = group_order(spec.shape);
        row.match = row.shape_order == row.aut_order && row.q_size == spec.q_expected &&
                    row.o_order == spec.o_order;
        if (spec.alt_shape[0]) {
            row.alt_shape = spec.alt_shape;
            row.alt_order = group_order(spec.alt_shape);
            row.alt_match = row.alt_order == row.aut_order;
        }
        out.all_match = out.all_match && row.match;
        out.rows.push_back(std::move(row));
    }
    return out;
}

UnimodularReport unimodular_report() {
    UnimodularReport out;
    Lattice L = builtin("unimodular24");
    out.name = L.name();
    out.rank = L.rank();
    out.det = L.det();
    out.min_norm = min_norm(L.zero_coset()).norm;
    std::vector<ModuleLabel> orbit = orbit_QL(L);
    out.q_size = static_cast<long long>(orbit.size());
    out.q_trivial = out.q_size == 1;
    for (const ModuleLabel& lbl : orbit)
        if (lbl.kind == LabelKind::twisted_signed) out.twisted_in_orbit = true;
    out.has_construction_b = detect_construction_b(L).has_value();
    out.o_order = Int(kLeechOOrder);
    out.aut_order = Int(static_cast<long>(out.q_size)) * pow2(out.rank - 1) * out.o_order;
    out.ok = out.q_trivial && !out.twisted_in_orbit && !out.has_construction_b &&
             out.det == 1 && out.min_norm == 4;
    return out;
}

Bw16Report bw16_report() {
    Bw16Report out;
    std::vector<ModuleLabel> orbit = orbit_QL(builtin("BW16"));
    out.q_size = static_cast<long long>(orbit.size());
    out.isotropic = count_isotropic(standard_quad_space(10, +1)).get_si();
    out.o_order = Int(kBw16OOrder);
    out.h_order = pow2(15) * out.o_order;
    out.aut_order = Int(static_cast<long>(out.q_size)) * out.h_order;
    out.shape = "2^16 * Omega+_10(2)";
    out.shape_order = group_order(out.shape);
    out.match = out.q_size == 527 && out.q_size == out.isotropic &&
                out.aut_order == out.shape_order;
    return out;
}

std::string render_text(const RootTableReport& r) {
    std::ostringstream os;
    os << "Aut(V+) orders for sqrt2 root lattices\n";
    for (const AutOrderRow& row : r.rows) {
        os << row.name << "  rank " << row.rank << "  |O| " << row.o_order.get_str() << " ("
           << row.o_source << ")  |Q| " << row.q_size << "  aut "
           << row.aut_order.get_str() << "  shape " << row.shape << " = "
           << row.shape_order.get_str() << "  " << (row.match ? "ok" : "MISMATCH");
        if (!row.alt_shape.empty())
            os << "  [alt " << row.alt_shape << " = " << row.alt_order.get_str() << " "
               << (row.alt_match ? "matches" : "rejected") << "]";
        os << "\n";
    }
    os << (r.all_match ? "all rows ok\n" : "MISMATCH in table\n");
    return os.str();
}

std::string render_text(const UnimodularReport& r) {
    std::ostringstream os;
    os << r.name << "  rank " << r.rank << "  det " << rat_str(r.det) << "  min norm "
       << rat_str(r.min_norm) << "\n";
    os << "orbit size " << r.q_size << (r.q_trivial ? " (trivial)" : " (NOT trivial)")
       << "\n";
    os << "twisted classes in orbit: " << (r.twisted_in_orbit ? "yes" : "no") << "\n";
    os << "construction B structure: " << (r.has_construction_b ? "found" : "none")
       << "\n";
    os << "|O(L)| " << r.o_order.get_str() << "  aut " << r.aut_order.get_str() << "\n";
    os << (r.ok ? "ok\n" : "MISMATCH\n");
    return os.str();
}

std::string render_text(const Bw16Report& r) {
    std::ostringstream os;
    os << "BW16  |Q| " << r.q_size << "  isotropic(dim10 plus) " << r.isotropic << "\n";
    os << "|O(L)| " << r.o_order.get_str() << "  stabilizer " << r.h_order.get_str()
       << "  aut " << r.aut_order.get_str() << "\n";
    os << "shape " << r.shape << " = " << r.shape_order.get_str() << "  "
       << (r.match ? "ok" : "MISMATCH") << "\n";
    return os.str();
}

std::string render_json(const RootTableReport& r) {
    json j;
    j["format"] = 1;
    j["report"] = "root-table";
    json rows = json::array();
    for (const AutOrderRow& row : r.rows) {
        json jr;
        jr["name"] = row.name;
        jr["rank"] = row.rank;
        jr["o_order"] = row.o_order.get_str();
        jr["o_source"] = row.o_source;
        jr["q_size"] = row.q_size;
        jr["q_expected"] = row.q_expected;
        jr["aut_order"] = row.aut_order.get_str();
        jr["shape"] = row.shape;
        jr["shape_order"] = row.shape_order.get_str();
        jr["match"] = row.match;
        if (!row.alt_shape.empty()) {
            jr["alt_shape"] = row.alt_shape;
            jr["alt_order"] = row.alt_order.get_str();
            jr["alt_match"] = row.alt_match;
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    j["all_match"] = r.all_match;
    return j.dump(2) + "\n";
}

std::string render_json(const UnimodularReport& r) {
    json j;
    j["format"] = 1;
    j["report"] = "unimodular";
    j["name"] = r.name;
    j["rank"] = r.rank;
    j["det"] = rat_str(r.det);
    j["min_norm"] = rat_str(r.min_norm);
    j["q_size"] = r.q_size;
    j["q_trivial"] = r.q_trivial;
    j["twisted_in_orbit"] = r.twisted_in_orbit;
    j["has_construction_b"] = r.has_construction_b;
    j["o_order"] = r.o_order.get_str();
    j["aut_order"] = r.aut_order.get_str();
    j["ok"] = r.ok;
    return j.dump(2) + "\n";
}

std::string render_json(const Bw16Report& r) {
    json j;
    j["format"] = 1;
    j["report"] = "bw16";
    j["q_size"] = r.q_size;
    j["isotropic"] = r.isotropic;
    j["o_order"] = r.o_order.get_str();
    j["h_order"] = r.h_order.get_str();
    j["aut_order"] = r.aut_order.get_str();
    j["shape"] = r.shape;
    j["shape_order"] = r.shape_order.get_str();
    j["match"] = r.match;
    return j.dump(2) + "\n";
}

}  // namespace latfusion
