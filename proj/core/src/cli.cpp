#include "latfusion/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "latfusion/constructions.hpp"
#include "latfusion/f2algebra.hpp"
#include "latfusion/lattice.hpp"
#include "latfusion/modcat.hpp"
#include "latfusion/permgroup.hpp"
#include "latfusion/qseries.hpp"
#include "latfusion/reports.hpp"

namespace latfusion::cli {

namespace {

using json = nlohmann::ordered_json;

const char* kUsage =
    "usage: latfusion <command> [args] [flags]\n"
    "\n"
    "commands:\n"
    "  code info <codefile>\n"
    "  lattice info <target>\n"
    "  constructb build <codefile>         emit the lattice as JSON\n"
    "  constructb detect <target>\n"
    "  qseries theta <target>\n"
    "  qseries graded-dim <target> [--label L]   L: 0+ 0- lam:<i>:+ chi:<i>:-\n"
    "  qseries verify-identity <target>\n"
    "  fusion table <target>\n"
    "  fusion qform <target>\n"
    "  fusion orbit <target>\n"
    "  group order <spec>\n"
    "  permgroup orthogonal --dim D --type plus|minus\n"
    "  report root-table | unimodular | bw16\n"
    "\n"
    "targets are builtin:<name> or a path to a lattice JSON file.\n"
    "flags: --cutoff Q (default 10), --json, --verbose\n";

struct Args {
    std::vector<std::string> positional;
    bool json = false;
    bool verbose = false;
    Rat cutoff = Rat(10);
    std::string label = "0+";
    int dim = 0;
    std::string type;
};

Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
}

Args parse_args(const std::vector<std::string>& argv) {
    Args a;
    for (size_t i = 0; i < argv.size(); ++i) {
        const std::string& t = argv[i];
        if (t.rfind("--", 0) != 0) {
            a.positional.push_back(t);
            continue;
        }
        std::string name = t, value;
        bool has_value = false;
        if (auto eq = t.find('='); eq != std::string::npos) {
            name = t.substr(0, eq);
            value = t.substr(eq + 1);
            has_value = true;
        }
        auto need = [&]() -> std::string {
            if (has_value) return value;
            if (++i >= argv.size())
                throw std::invalid_argument("flag " + name + " needs a value");
            return argv[i];
        };
        if (name == "--json") {
            a.json = true;
        } else if (name == "--verbose") {
            a.verbose = true;
        } else if (name == "--cutoff") {
            a.cutoff = parse_rat(need());
            if (a.cutoff <= 0) throw std::invalid_argument("--cutoff must be positive");
        } else if (name == "--label") {
            a.label = need();
        } else if (name == "--dim") {
            a.dim = std::stoi(need());
        } else if (name == "--type") {
            a.type = need();
        } else {
            throw std::invalid_argument("unknown flag " + name);
        }
    }
    return a;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Lattice load_lattice(const std::string& target) {
    if (target.rfind("builtin:", 0) == 0) return builtin(target.substr(8));
    return lattice_from_json(slurp(target));
}

std::string vec_str(const Vec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rat_str(v[i]);
    }
    return s;
}

// Label text that works without a fusion space (orbit output for lattices
// that are not 2-elementary totally even).
std::string describe_label(const ModuleLabel& l) {
    std::string base;
    bool zero = true;
    for (const Rat& k : l.coset.key) zero = zero && k == 0;
    if (l.kind == LabelKind::twisted_signed)
        base = "chi(" + vec_str(l.coset.key) + ")";
    else if (zero)
        base = "0";
    else
        base = "lam(" + vec_str(l.coset.key) + ")";
    if (l.kind == LabelKind::untwisted_pair) return base;
    return base + (l.sign < 0 ? "-" : "+");
}

json series_json(const QSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(json::array({rat_str(e), rat_str(c)}));
    return terms;
}

int cmd_code_info(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("code info needs a file");
    BinaryCode c = parse_code(slurp(a.positional[0]));
    std::vector<Int> we = weight_enumerator(c);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["length"] = c.length;
        j["dimension"] = c.dimension;
        j["min_weight"] = min_weight(c);
        j["doubly_even"] = is_doubly_even(c);
        j["self_orthogonal"] = is_self_orthogonal(c);
        json w = json::array();
        for (const Int& x : we) w.push_back(x.get_str());
        j["weight_enumerator"] = std::move(w);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "length " << c.length << "  dimension " << c.dimension << "  min weight "
        << min_weight(c) << "\n";
    out << "doubly even: " << (is_doubly_even(c) ? "yes" : "no")
        << "  self-orthogonal: " << (is_self_orthogonal(c) ? "yes" : "no") << "\n";
    out << "weight enumerator:";
    for (const Int& x : we) out << " " << x.get_str();
    out << "\n";
    return 0;
}

int cmd_lattice_info(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("lattice info needs a target");
    Lattice L = load_lattice(a.positional[0]);
    MinNorm mn = min_norm(L.zero_coset());
    std::string snf;
    for (const Int& d : L.snf_diagonal()) {
        if (!snf.empty()) snf += ",";
        snf += d.get_str();
    }
    if (a.json) {
        json j;
        j["format"] = 1;
        j["name"] = L.name();
        j["rank"] = L.rank();
        j["ambient"] = L.ambient_dim();
        j["det"] = rat_str(L.det());
        j["even"] = L.is_even();
        j["integral"] = L.gram_is_integral();
        j["two_elementary_totally_even"] = L.is_2elementary_totally_even();
        j["min_norm"] = rat_str(mn.norm);
        j["min_count"] = mn.count;
        j["snf"] = snf;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "lattice " << L.name() << "  rank " << L.rank() << "  ambient "
        << L.ambient_dim() << "\n";
    out << "det " << rat_str(L.det()) << "  even " << (L.is_even() ? "yes" : "no")
        << "  integral " << (L.gram_is_integral() ? "yes" : "no")
        << "  2-elementary totally even "
        << (L.is_2elementary_totally_even() ? "yes" : "no") << "\n";
    out << "min norm " << rat_str(mn.norm) << " (count " << mn.count << ")  snf " << snf
        << "\n";
    if (a.verbose) {
        out << "gram:\n";
        for (const Vec& row : L.gram()) out << "  " << vec_str(row) << "\n";
    }
    return 0;
}

int cmd_constructb_build(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1)
        throw std::invalid_argument("constructb build needs a code file");
    LbResult r = lb_from_code(parse_code(slurp(a.positional[0])));
    out << lattice_to_json(r.lattice) << "\n";
    return 0;
}

int cmd_constructb_detect(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1)
        throw std::invalid_argument("constructb detect needs a target");
    Lattice L = load_lattice(a.positional[0]);
    std::optional<BDetect> d = detect_construction_b(L);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["found"] = d.has_value();
        if (d) {
            j["code"] = code_to_text(d->code);
            j["lambda_key"] = vec_str(d->lambda.key);
            json frame = json::array();
            for (const Vec& v : d->frame.vectors) frame.push_back(vec_str(v));
            j["frame"] = std::move(frame);
        }
        out << j.dump(2) << "\n";
        return d ? 0 : 1;
    }
    if (!d) {
        out << "no construction B structure\n";
        return 1;
    }
    out << "construction B structure found\n";
    out << "lambda key " << vec_str(d->lambda.key) << "\n";
    out << "code:\n" << code_to_text(d->code);
    if (a.verbose) {
        out << "frame:\n";
        for (const Vec& v : d->frame.vectors) out << "  " << vec_str(v) << "\n";
    }
    return 0;
}

int cmd_qseries_theta(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("qseries theta needs a target");
    Lattice L = load_lattice(a.positional[0]);
    QSeries s = theta_series(L.zero_coset(), a.cutoff);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["lattice"] = L.name();
        j["cutoff"] = rat_str(a.cutoff);
        j["terms"] = series_json(s);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "theta(" << L.name() << ") = " << to_string(s) << "  (to q^"
        << rat_str(a.cutoff) << ")\n";
    return 0;
}

int cmd_qseries_graded_dim(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1)
        throw std::invalid_argument("qseries graded-dim needs a target");
    Lattice L = load_lattice(a.positional[0]);
    FusionSpace space = build_fusion_space(L);
    ModuleLabel l = parse_label(space, a.label);
    QSeries s = graded_dim(l, a.cutoff);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["lattice"] = L.name();
        j["label"] = label_str(l, space);
        j["cutoff"] = rat_str(a.cutoff);
        j["terms"] = series_json(s);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "dim_q " << label_str(l, space) << " = " << to_string(s) << "  (to q^"
        << rat_str(a.cutoff) << ")\n";
    return 0;
}

int cmd_qseries_verify(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1)
        throw std::invalid_argument("qseries verify-identity needs a target");
    Lattice L = load_lattice(a.positional[0]);
    ThetaIdentityCheck r = check_theta_identity(L, a.cutoff);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["lattice"] = L.name();
        j["cutoff"] = rat_str(r.cutoff);
        j["dual_cutoff"] = rat_str(r.dual_cutoff);
        j["ok"] = r.ok;
        if (r.mismatch_at) j["mismatch_at"] = rat_str(*r.mismatch_at);
        out << j.dump(2) << "\n";
        return r.ok ? 0 : 1;
    }
    if (r.ok) {
        out << "theta identity verified for " << L.name() << " to q^" << rat_str(r.cutoff)
            << " (dual to q^" << rat_str(r.dual_cutoff) << ")\n";
        return 0;
    }
    out << "theta identity FAILS for " << L.name() << " at q^" << rat_str(*r.mismatch_at)
        << "\n";
    return 1;
}

int cmd_fusion_table(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("fusion table needs a target");
    FusionSpace space = build_fusion_space(load_lattice(a.positional[0]));
    if (a.json) {
        json j;
        j["format"] = 1;
        j["lattice"] = space.lattice.name();
        j["dim"] = space.dim;
        j["labels"] = space.degree();
        json names = json::array();
        for (uint32_t v = 0; v < space.degree(); ++v)
            names.push_back(label_str(space.label_at(v), space));
        j["index"] = std::move(names);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "fusion space of " << space.lattice.name() << ": " << space.degree()
        << " labels, dim " << space.dim << " over F2 (fusion = XOR of indices)\n";
    for (uint32_t v = 0; v < space.degree(); ++v)
        out << "  " << v << ": " << label_str(space.label_at(v), space) << "\n";
    return 0;
}

int cmd_fusion_qform(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("fusion qform needs a target");
    FusionSpace space = build_fusion_space(load_lattice(a.positional[0]));
    if (!space.has_quad)
        throw std::invalid_argument("q_L needs rank divisible by 8");
    int type = arf_type(space.quad);
    Int iso = count_isotropic(space.quad);
    bool nondeg = is_nondegenerate(space.quad);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["lattice"] = space.lattice.name();
        j["dim"] = space.dim;
        j["type"] = type > 0 ? "plus" : "minus";
        j["nondegenerate"] = nondeg;
        j["isotropic_nonzero"] = iso.get_str();
        if (a.verbose) {
            json q = json::array();
            for (uint32_t v = 0; v < space.degree(); ++v) q.push_back(space.quad.q(v));
            j["values"] = std::move(q);
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "q_L on S_" << space.lattice.name() << ": dim " << space.dim << ", "
        << (type > 0 ? "plus" : "minus") << " type, "
        << (nondeg ? "nondegenerate" : "DEGENERATE") << ", " << iso.get_str()
        << " nonzero isotropic labels\n";
    if (a.verbose)
        for (uint32_t v = 0; v < space.degree(); ++v)
            out << "  " << label_str(space.label_at(v), space) << ": " << space.quad.q(v)
                << "\n";
    return 0;
}

int cmd_fusion_orbit(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("fusion orbit needs a target");
    Lattice L = load_lattice(a.positional[0]);
    std::vector<ModuleLabel> orbit = orbit_QL(L);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["lattice"] = L.name();
        j["size"] = orbit.size();
        json labels = json::array();
        for (const ModuleLabel& l : orbit) labels.push_back(describe_label(l));
        j["labels"] = std::move(labels);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "orbit of 0- in S_" << L.name() << ": " << orbit.size() << " labels\n";
    if (a.verbose || orbit.size() <= 16)
        for (const ModuleLabel& l : orbit) out << "  " << describe_label(l) << "\n";
    return 0;
}

int cmd_group_order(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw std::invalid_argument("group order needs a spec");
    Int n = group_order(a.positional[0]);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["spec"] = a.positional[0];
        j["order"] = n.get_str();
        out << j.dump(2) << "\n";
        return 0;
    }
    out << n.get_str() << "\n";
    return 0;
}

int cmd_permgroup_orthogonal(const Args& a, std::ostream& out) {
    if (a.dim <= 0 || a.dim % 2 != 0)
        throw std::invalid_argument("--dim must be a positive even number");
    int type;
    if (a.type == "plus")
        type = 1;
    else if (a.type == "minus")
        type = -1;
    else
        throw std::invalid_argument("--type must be plus or minus");
    F2QuadSpace q = standard_quad_space(a.dim, type);
    std::vector<Perm> gens = transvection_generators(q);
    PermGroup g = schreier_sims(gens);
    std::string spec = std::string("O") + (type > 0 ? "+" : "-") + "_" +
                       std::to_string(a.dim) + "(2)";
    Int expected = group_order(spec);
    // dim-4 plus is the one case where transvections fall short (index 2)
    int index = (a.dim == 4 && type == 1) ? 2 : 1;
    expected /= index;
    bool ok = g.order == expected;
    std::vector<long long> sizes = orbit_sizes(g);
    if (a.json) {
        json j;
        j["format"] = 1;
        j["spec"] = spec;
        j["degree"] = g.degree;
        j["transvections"] = gens.size();
        j["order"] = g.order.get_str();
        j["expected"] = expected.get_str();
        j["subgroup_index"] = index;
        j["orbit_sizes"] = sizes;
        j["match"] = ok;
        out << j.dump(2) << "\n";
        return ok ? 0 : 1;
    }
    out << spec << " on " << g.degree << " points: " << gens.size()
        << " transvections";
    if (index != 1) out << " (index-" << index << " subgroup)";
    out << "\n";
    out << "order " << g.order.get_str() << "  expected " << expected.get_str() << "  "
        << (ok ? "ok" : "MISMATCH") << "\n";
    out << "orbit sizes:";
    for (long long s : sizes) out << " " << s;
    out << "\n";
    return ok ? 0 : 1;
}

int cmd_report(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1)
        throw std::invalid_argument("report needs one of: root-table unimodular bw16");
    const std::string& which = a.positional[0];
    if (which == "root-table") {
        RootTableReport r = root_table();
        out << (a.json ? render_json(r) : render_text(r));
        return r.all_match ? 0 : 1;
    }
    if (which == "unimodular") {
        UnimodularReport r = unimodular_report();
        out << (a.json ? render_json(r) : render_text(r));
        return r.ok ? 0 : 1;
    }
    if (which == "bw16") {
        Bw16Report r = bw16_report();
        out << (a.json ? render_json(r) : render_text(r));
        return r.match ? 0 : 1;
    }
    throw std::invalid_argument("unknown report " + which);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty() || args[0] == "--help" || args[0] == "help") {
            (args.empty() ? err : out) << kUsage;
            return args.empty() ? 2 : 0;
        }
        std::string cmd = args[0];
        std::vector<std::string> rest(args.begin() + 1, args.end());
        auto sub = [&](const char* name) {
            if (rest.empty() || rest[0] != name) return false;
            rest.erase(rest.begin());
            return true;
        };
        if (cmd == "code" && sub("info")) return cmd_code_info(parse_args(rest), out);
        if (cmd == "lattice" && sub("info")) return cmd_lattice_info(parse_args(rest), out);
        if (cmd == "constructb" && sub("build"))
            return cmd_constructb_build(parse_args(rest), out);
        if (cmd == "constructb" && sub("detect"))
            return cmd_constructb_detect(parse_args(rest), out);
        if (cmd == "qseries" && sub("theta")) return cmd_qseries_theta(parse_args(rest), out);
        if (cmd == "qseries" && sub("graded-dim"))
            return cmd_qseries_graded_dim(parse_args(rest), out);
        if (cmd == "qseries" && sub("verify-identity"))
            return cmd_qseries_verify(parse_args(rest), out);
        if (cmd == "fusion" && sub("table")) return cmd_fusion_table(parse_args(rest), out);
        if (cmd == "fusion" && sub("qform")) return cmd_fusion_qform(parse_args(rest), out);
        if (cmd == "fusion" && sub("orbit")) return cmd_fusion_orbit(parse_args(rest), out);
        if (cmd == "group" && sub("order")) return cmd_group_order(parse_args(rest), out);
        if (cmd == "permgroup" && sub("orthogonal"))
            return cmd_permgroup_orthogonal(parse_args(rest), out);
        if (cmd == "report") return cmd_report(parse_args(rest), out);
        err << "unknown command; see --help\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace latfusion::cli
