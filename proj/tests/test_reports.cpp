#include "doctest.h"
#include "json.hpp"
#include "latfusion/f2algebra.hpp"
#include "latfusion/reports.hpp"

using namespace latfusion;

TEST_CASE("root table rows and orders") {
    RootTableReport r = root_table();
    REQUIRE(r.rows.size() == 10);
    CHECK(r.all_match);
    for (const AutOrderRow& row : r.rows) {
        CAPTURE(row.name);
        CHECK(row.match);
        CHECK(row.aut_order == row.shape_order);
        CHECK(row.q_size == row.q_expected);
        CHECK(row.aut_order ==
              Int(static_cast<long>(row.q_size)) * pow2(row.rank - 1) * row.o_order);
    }
    const AutOrderRow& a3 = r.rows[2];
    CHECK(a3.name == "A3");
    CHECK(a3.o_order == 48);
    CHECK(a3.o_source == "search");
    CHECK(a3.q_size == 3);
    CHECK(a3.aut_order == 576);
    CHECK(a3.shape == "(2^2:Sym_4).Sym_3");
    const AutOrderRow& e8 = r.rows[9];
    CHECK(e8.name == "E8");
    CHECK(e8.o_order == 696729600);
    CHECK(e8.o_source == "table");
    CHECK(e8.q_size == 527);
    CHECK(e8.aut_order == Int("46998591897600"));
    CHECK(e8.shape == "O+_10(2)");
}

TEST_CASE("D series power ambiguity is settled by the numbers") {
    RootTableReport r = root_table();
    const AutOrderRow& d5 = r.rows[5];
    CHECK(d5.name == "D5");
    CHECK(d5.aut_order == 184320);
    CHECK(d5.shape == "(2^8:Sym_5).Sym_3");
    CHECK(d5.alt_shape == "(2^7:Sym_5).Sym_3");
    CHECK(d5.alt_order == 92160);
    CHECK(!d5.alt_match);
    const AutOrderRow& d6 = r.rows[6];
    CHECK(d6.name == "D6");
    CHECK(d6.aut_order == 4423680);
    CHECK(d6.alt_order == 2211840);
    CHECK(!d6.alt_match);
}

TEST_CASE("unimodular rank 24") {
    UnimodularReport u = unimodular_report();
    CHECK(u.ok);
    CHECK(u.rank == 24);
    CHECK(u.det == 1);
    CHECK(u.min_norm == 4);
    CHECK(u.q_size == 1);
    CHECK(u.q_trivial);
    CHECK(!u.twisted_in_orbit);
    CHECK(!u.has_construction_b);
    CHECK(u.aut_order == pow2(23) * u.o_order);
    CHECK(u.aut_order == Int("69755919563168164085760000"));
}

TEST_CASE("rank 16 exceptional case") {
    Bw16Report b = bw16_report();
    CHECK(b.match);
    CHECK(b.q_size == 527);
    CHECK(b.isotropic == 527);
    CHECK(b.h_order == pow2(15) * b.o_order);
    CHECK(b.aut_order == Int(527) * b.h_order);
    CHECK(b.aut_order == Int("1540049859300556800"));
    CHECK(b.shape_order == group_order(b.shape));
    CHECK(b.shape_order == pow2(16) * group_order("Omega+_10(2)"));
}

TEST_CASE("rendering is deterministic and the json parses") {
    RootTableReport r = root_table();
    CHECK(render_text(r) == render_text(root_table()));
    std::string js = render_json(r);
    CHECK(js == render_json(root_table()));
    nlohmann::json doc = nlohmann::json::parse(js);
    CHECK(doc.at("format") == 1);
    CHECK(doc.at("rows").size() == 10);
    CHECK(doc.at("all_match") == true);

    UnimodularReport u = unimodular_report();
    nlohmann::json ud = nlohmann::json::parse(render_json(u));
    CHECK(ud.at("format") == 1);
    CHECK(ud.at("aut_order") == "69755919563168164085760000");

    Bw16Report b = bw16_report();
    nlohmann::json bd = nlohmann::json::parse(render_json(b));
    CHECK(bd.at("format") == 1);
    CHECK(bd.at("aut_order") == "1540049859300556800");
    std::string text = render_text(b);
    CHECK(text.find("527") != std::string::npos);
}
