#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "latfusion/cli.hpp"
#include "latfusion/lattice.hpp"

using namespace latfusion;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const char* kRep8File = "cli_test_rep8.txt";

void write_rep8() {
    std::ofstream f(kRep8File);
    f << "# repetition code of length 8\n11111111\n";
}

}  // namespace

TEST_CASE("usage and dispatch") {
    Result none = run_cli({});
    CHECK(none.code == 2);
    CHECK(has(none.err, "usage:"));
    CHECK(none.out.empty());
    Result help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(has(help.out, "fusion orbit"));
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"lattice", "info", "builtin:A1", "--frobnicate"}).code == 2);
    CHECK(run_cli({"lattice", "info"}).code == 2);
    CHECK(run_cli({"lattice", "info", "builtin:NoSuch"}).code == 2);
    CHECK(run_cli({"lattice", "info", "no_such_file.json"}).code == 2);
}

TEST_CASE("code info") {
    write_rep8();
    Result r = run_cli({"code", "info", kRep8File});
    CHECK(r.code == 0);
    CHECK(has(r.out, "length 8  dimension 1  min weight 8"));
    CHECK(has(r.out, "doubly even: yes"));
    Result j = run_cli({"code", "info", kRep8File, "--json"});
    CHECK(j.code == 0);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc.at("format") == 1);
    CHECK(doc.at("dimension") == 1);
    CHECK(doc.at("weight_enumerator").size() == 9);
    CHECK(doc.at("weight_enumerator")[8] == "1");
}

TEST_CASE("lattice info") {
    Result r = run_cli({"lattice", "info", "builtin:sqrt2E8"});
    CHECK(r.code == 0);
    CHECK(has(r.out, "rank 8"));
    CHECK(has(r.out, "det 256"));
    CHECK(has(r.out, "2-elementary totally even yes"));
    Result j = run_cli({"lattice", "info", "builtin:BW16", "--json"});
    CHECK(j.code == 0);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc.at("format") == 1);
    CHECK(doc.at("rank") == 16);
    CHECK(doc.at("det") == "256");
    CHECK(doc.at("min_norm") == "4");
    CHECK(doc.at("min_count") == 4320);
}

TEST_CASE("constructb build then detect round trip") {
    write_rep8();
    Result built = run_cli({"constructb", "build", kRep8File});
    CHECK(built.code == 0);
    Lattice L = lattice_from_json(built.out);
    CHECK(L.rank() == 8);
    CHECK(L.det() == 256);
    const char* kLatFile = "cli_test_rep8_lattice.json";
    {
        std::ofstream f(kLatFile);
        f << built.out;
    }
    Result det = run_cli({"constructb", "detect", kLatFile});
    CHECK(det.code == 0);
    CHECK(has(det.out, "construction B structure found"));
    CHECK(has(det.out, "11111111"));
    Result miss = run_cli({"constructb", "detect", "builtin:unimodular24"});
    CHECK(miss.code == 1);
    CHECK(has(miss.out, "no construction B structure"));
    Result missj = run_cli({"constructb", "detect", "builtin:unimodular24", "--json"});
    CHECK(missj.code == 1);
    CHECK(nlohmann::json::parse(missj.out).at("found") == false);
}

TEST_CASE("qseries commands") {
    Result theta = run_cli({"qseries", "theta", "builtin:E8", "--cutoff=3"});
    CHECK(theta.code == 0);
    CHECK(has(theta.out, "1 + 240*q + 2160*q^2 + 6720*q^3"));
    CHECK(has(theta.out, "(to q^3)"));
    Result tj = run_cli({"qseries", "theta", "builtin:E8", "--cutoff", "2", "--json"});
    nlohmann::json tdoc = nlohmann::json::parse(tj.out);
    CHECK(tdoc.at("terms")[0] == nlohmann::json::array({"0", "1"}));
    CHECK(tdoc.at("terms")[1] == nlohmann::json::array({"1", "240"}));

    Result gd = run_cli({"qseries", "graded-dim", "builtin:sqrt2E8", "--label", "0-",
                         "--cutoff", "4"});
    CHECK(gd.code == 0);
    CHECK(has(gd.out, "dim_q 0-"));
    CHECK(has(gd.out, "8*q + 128*q^2 + 1088*q^3 + 6656*q^4"));
    CHECK(run_cli({"qseries", "graded-dim", "builtin:sqrt2E8", "--label", "junk"}).code == 2);
    CHECK(run_cli({"qseries", "graded-dim", "builtin:A2"}).code == 2);  // no fusion space

    Result ok = run_cli({"qseries", "verify-identity", "builtin:sqrt2E8", "--cutoff", "6"});
    CHECK(ok.code == 0);
    CHECK(has(ok.out, "theta identity verified"));
    CHECK(run_cli({"qseries", "verify-identity", "builtin:E8"}).code == 2);
    CHECK(run_cli({"qseries", "verify-identity", "builtin:sqrt2E8", "--cutoff", "2"}).code == 2);
}

TEST_CASE("fusion commands") {
    Result table = run_cli({"fusion", "table", "builtin:sqrt2E8"});
    CHECK(table.code == 0);
    CHECK(has(table.out, "1024 labels, dim 10"));
    CHECK(has(table.out, "0: 0+"));
    Result qf = run_cli({"fusion", "qform", "builtin:BW16"});
    CHECK(qf.code == 0);
    CHECK(has(qf.out, "plus type"));
    CHECK(has(qf.out, "527 nonzero isotropic labels"));
    Result orbit = run_cli({"fusion", "orbit", "builtin:sqrt2A3"});
    CHECK(orbit.code == 0);
    CHECK(has(orbit.out, "3 labels"));
    CHECK(has(orbit.out, "0-"));
    Result oj = run_cli({"fusion", "orbit", "builtin:sqrt2E8", "--json"});
    CHECK(oj.code == 0);
    CHECK(nlohmann::json::parse(oj.out).at("size") == 527);
    CHECK(run_cli({"fusion", "orbit", "builtin:E8"}).code == 2);  // roots
}

TEST_CASE("group and permgroup commands") {
    Result g = run_cli({"group", "order", "Sym_5"});
    CHECK(g.code == 0);
    CHECK(g.out == "120\n");
    CHECK(run_cli({"group", "order", "Foo_3(2)"}).code == 2);
    Result pg = run_cli({"permgroup", "orthogonal", "--dim", "4", "--type", "minus"});
    CHECK(pg.code == 0);
    CHECK(has(pg.out, "order 120"));
    CHECK(has(pg.out, "ok"));
    // the dim-4 plus transvections reach only an index-2 subgroup
    Result ex = run_cli({"permgroup", "orthogonal", "--dim", "4", "--type", "plus"});
    CHECK(ex.code == 0);
    CHECK(has(ex.out, "order 36"));
    CHECK(has(ex.out, "index-2 subgroup"));
    CHECK(run_cli({"permgroup", "orthogonal", "--dim", "3", "--type", "plus"}).code == 2);
    CHECK(run_cli({"permgroup", "orthogonal", "--dim", "4", "--type", "sideways"}).code == 2);
}

TEST_CASE("report commands are deterministic") {
    Result a = run_cli({"report", "root-table"});
    Result b = run_cli({"report", "root-table"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(has(a.out, "E8"));
    Result ju = run_cli({"report", "unimodular", "--json"});
    CHECK(ju.code == 0);
    CHECK(nlohmann::json::parse(ju.out).at("ok") == true);
    Result jb = run_cli({"report", "bw16", "--json"});
    CHECK(jb.code == 0);
    CHECK(nlohmann::json::parse(jb.out).at("match") == true);
    CHECK(run_cli({"report", "nonsense"}).code == 2);
}
