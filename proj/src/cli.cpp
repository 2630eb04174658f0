#include "graphmoves/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphmoves/canonical.hpp"
#include "graphmoves/io.hpp"
#include "graphmoves/session.hpp"

namespace gm {

Transported transport(const Graph& g, const MoveScript& s) {
    Session c(g);
    c.collect();
    Graph cur = c.graph();
    MoveScript out = c.script();
    Graph ref = from_db(to_db(g));
    auto a = cur.names(), b = ref.names();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::logic_error("collected graph and its pair disagree on vertex names");
    for (const auto& m : s) {
        auto mm = reorder(m, ref.names(), cur.names());
        ref = apply_move(ref, m);
        cur = apply_move(cur, mm);
        out.push_back(std::move(mm));
    }
    return {std::move(cur), std::move(out)};
}

namespace {

using json = nlohmann::json;

// a negative verdict: exit 1 without an error line
struct Verdict {
    int code;
};

struct Opts {
    bool machine = false;
    std::optional<std::int64_t> seed;
    std::optional<std::size_t> budget;
    std::string output, script_out;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw DomainError("cannot write " + path);
}

Graph load_graph(const std::string& path) {
    try {
        return parse_graph(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what(), 0, 0);
    }
}

void show_graph(std::ostream& os, const Graph& g) {
    os << "vertices:";
    for (const auto& n : g.names()) os << ' ' << n;
    os << "\nadjacency:\n" << paren_matrix(g.adjacency());
}

void show_db(std::ostream& os, const DBPair& p) {
    os << "labels:";
    for (const auto& n : p.labels) os << ' ' << n;
    os << "\nD = " << paren_row(p.d) << "\nB =\n" << paren_matrix(p.b);
}

std::string str(const PointedK0& k) {
    std::ostringstream os;
    os << k;
    return os.str();
}

json k0_json(const PointedK0& k) { return json::parse(emit_k0(k)); }

json result_json(const Graph& g, const MoveScript& s) {
    json j;
    j["graph"] = json::parse(emit_graph(g));
    j["db"] = json::parse(emit_db(to_db(g)));
    json a = json::array();
    for (const auto& m : s) a.push_back(json::parse(emit_move(m)));
    j["script"] = a;
    return j;
}

void write_outputs(const Opts& o, const Graph& g, const MoveScript* s) {
    if (!o.output.empty()) write_file(o.output, emit_graph(g));
    if (s && !o.script_out.empty()) write_file(o.script_out, emit_script(*s));
}

void cmd_validate(const Opts& o, const std::string& path, std::ostream& out) {
    auto data = parse_graph_data(read_file(path));
    auto errs = validate_graph(data);
    if (errs.empty()) {
        try {
            (void)to_db(Graph(data));
        } catch (const DomainError& e) {
            errs.emplace_back(e.what());
        }
    }
    if (o.machine) {
        json j;
        j["valid"] = errs.empty();
        j["violations"] = errs;
        out << j.dump() << '\n';
    } else if (errs.empty()) {
        out << "valid\n";
    } else {
        out << "invalid\n";
        for (const auto& e : errs) out << "  " << e << '\n';
    }
    if (!errs.empty()) throw Verdict{1};
}

void cmd_info(const Opts& o, const std::string& path, std::ostream& out) {
    auto g = load_graph(path);
    auto p = to_db(g);
    auto rep = check_canonical(p);
    const auto& cs = rep.structure;
    auto k = pointed_k0(p);
    auto member_names = [&](const Component& c) {
        std::vector<std::string> r;
        for (auto i : c.members) r.push_back(p.labels[i]);
        return r;
    };
    if (o.machine) {
        json j;
        json vs = json::array();
        for (std::size_t v = 0; v < g.size(); ++v)
            vs.push_back({{"name", g.name(v)}, {"class", to_string(vertex_class(g, v))}});
        j["vertices"] = vs;
        json comps = json::array();
        for (std::size_t x = 0; x < cs.comps.size(); ++x) {
            const auto& c = cs.comps[x];
            comps.push_back({{"members", member_names(c)},
                             {"regular", c.regular},
                             {"singular", c.singular},
                             {"cyclic", c.cyclic},
                             {"trichotomy", to_string(rep.classes[x])},
                             {"mr", mr(p, x)},
                             {"k0", k0_json(pointed_k0(p, x))}});
        }
        j["components"] = comps;
        json le = json::array();
        for (std::size_t x = 0; x < cs.comps.size(); ++x)
            for (std::size_t y = 0; y < cs.comps.size(); ++y)
                if (x != y && cs.leq(x, y)) le.push_back({x, y});
        j["preorder"] = le;
        j["k0"] = k0_json(k);
        j["mr"] = k.mr();
        json conds;
        conds["I"] = rep.loops.ok;
        conds["II"] = rep.edges.ok;
        conds["III"] = rep.infinite.ok;
        conds["IV"] = rep.large.ok;
        json w = json::array();
        for (const auto* c : {&rep.loops, &rep.edges, &rep.infinite, &rep.large})
            for (const auto& s : c->witnesses) w.push_back(s);
        conds["witnesses"] = w;
        conds["canonical"] = rep.canonical();
        j["canonical"] = conds;
        out << j.dump() << '\n';
        return;
    }
    out << "vertices:\n";
    for (std::size_t v = 0; v < g.size(); ++v) out << "  " << g.name(v) << "  " << to_string(vertex_class(g, v)) << '\n';
    show_db(out, p);
    out << "components:\n";
    for (std::size_t x = 0; x < cs.comps.size(); ++x) {
        const auto& c = cs.comps[x];
        out << "  [" << x << "] {";
        auto names = member_names(c);
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? " " : "") << names[i];
        out << "}  " << (c.cyclic ? "cyclic" : "acyclic") << ", " << c.regular << " regular, " << c.singular
            << " singular, " << to_string(rep.classes[x]) << ", mr " << mr(p, x) << ", K0 " << str(pointed_k0(p, x))
            << '\n';
    }
    out << "preorder:";
    bool any = false;
    for (std::size_t x = 0; x < cs.comps.size(); ++x)
        for (std::size_t y = 0; y < cs.comps.size(); ++y)
            if (x != y && cs.leq(x, y)) out << (any ? ", " : " ") << '[' << x << "] <= [" << y << ']', any = true;
    out << (any ? "\n" : " none\n");
    out << "pointed K0: " << str(k) << ", mr " << k.mr() << '\n';
    out << "canonical: " << (rep.canonical() ? "yes" : "no") << '\n';
    for (const auto* c : {&rep.loops, &rep.edges, &rep.infinite, &rep.large})
        for (const auto& s : c->witnesses) out << "  " << s << '\n';
}

void cmd_to_db(const Opts& o, const std::string& path, std::ostream& out) {
    auto p = to_db(load_graph(path));
    if (!o.output.empty()) write_file(o.output, emit_db(p));
    if (o.machine) out << emit_db(p);
    else show_db(out, p);
}

void cmd_from_db(const Opts& o, const std::string& path, std::ostream& out) {
    DBPair p;
    try {
        p = parse_db(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what(), 0, 0);
    }
    auto g = from_db(p);
    write_outputs(o, g, nullptr);
    if (o.machine) out << emit_graph(g);
    else show_graph(out, g);
}

void cmd_apply(const Opts& o, const std::string& gpath, const std::string& spath, std::ostream& out) {
    auto g = load_graph(gpath);
    MoveScript s;
    try {
        s = parse_script(read_file(spath));
    } catch (const FormatError& e) {
        throw FormatError(spath + ": " + e.what(), 0, 0);
    }
    auto r = apply_script(g, s);
    if (!r.ok()) throw DomainError("step " + std::to_string(*r.failed_step + 1) + ": " + r.error);
    write_outputs(o, r.graph, nullptr);
    if (o.machine) {
        out << emit_graph(r.graph);
    } else {
        show_graph(out, r.graph);
        show_db(out, to_db(r.graph));
        out << "pointed K0: " << str(pointed_k0(to_db(r.graph))) << '\n';
    }
}

void report_transform(const Opts& o, const Transported& t, std::ostream& out, const std::string& extra) {
    write_outputs(o, t.graph, &t.script);
    if (o.machine) {
        out << result_json(t.graph, t.script).dump() << '\n';
        return;
    }
    if (!extra.empty()) out << extra << '\n';
    show_graph(out, t.graph);
    show_db(out, to_db(t.graph));
    out << "pointed K0: " << str(pointed_k0(to_db(t.graph))) << '\n';
    out << "script: " << t.script.size() << " moves\n";
    if (o.script_out.empty())
        for (const auto& m : t.script) out << "  " << emit_move(m) << '\n';
}

void require_same(const DBPair& want, const Graph& got) {
    auto p = to_db(got);
    if (!(p.aligned_to(want.labels).same_numbers(want)))
        throw std::logic_error("transported script does not reproduce the computed pair");
}

void cmd_compile_op(const Opts& o, const std::string& gpath, const std::string& opath, std::ostream& out) {
    auto g = load_graph(gpath);
    auto p = to_db(g);
    OpRecord op;
    try {
        op = parse_op(read_file(opath), p);
    } catch (const FormatError& e) {
        throw FormatError(opath + ": " + e.what(), 0, 0);
    }
    auto r = compile_op(p, op);
    auto t = transport(g, r.script);
    require_same(r.pair, t.graph);
    report_transform(o, t, out, "operation: " + std::string(emit_op(op).substr(0, emit_op(op).size() - 1)));
}

void cmd_canonicalize(const Opts& o, const std::string& gpath, std::ostream& out) {
    auto g = load_graph(gpath);
    auto r = canonicalize(to_db(g), o.budget);
    auto t = transport(g, r.script);
    require_same(r.pair, t.graph);
    report_transform(o, t, out, "budget: " + std::to_string(r.budget) + " moves");
}

void cmd_check_canonical(const Opts& o, const std::string& path, std::ostream& out) {
    auto rep = check_canonical(to_db(load_graph(path)));
    const std::pair<const char*, const ConditionCheck*> conds[] = {
        {"I", &rep.loops}, {"II", &rep.edges}, {"III", &rep.infinite}, {"IV", &rep.large}};
    if (o.machine) {
        json j;
        for (const auto& [n, c] : conds) j[n] = {{"ok", c->ok}, {"witnesses", c->witnesses}};
        j["canonical"] = rep.canonical();
        out << j.dump() << '\n';
    } else {
        for (const auto& [n, c] : conds) {
            out << '(' << n << ") " << (c->ok ? "ok" : "violated") << '\n';
            for (const auto& w : c->witnesses) out << "  " << w << '\n';
        }
        out << (rep.canonical() ? "canonical\n" : "not canonical\n");
    }
    if (!rep.canonical()) throw Verdict{1};
}

void cmd_verify_cert(const Opts& o, const std::string& e, const std::string& f, const std::string& c, std::ostream& out) {
    auto pe = to_db(load_graph(e)), pf = to_db(load_graph(f));
    Certificate cert;
    try {
        cert = parse_certificate(read_file(c));
    } catch (const FormatError& x) {
        throw FormatError(c + ": " + x.what(), 0, 0);
    }
    auto v = verify_certificate(pe, pf, cert);
    bool ok = v.accepts(cert.level);
    if (o.machine) {
        json j;
        j["pattern"] = v.pattern;
        j["invertible"] = v.invertible;
        j["intertwines"] = v.intertwines;
        j["special"] = v.special;
        j["unit"] = v.unit;
        j["level"] = to_string(v.level);
        j["claimed"] = to_string(cert.level);
        j["accepted"] = ok;
        j["notes"] = v.notes;
        out << j.dump() << '\n';
    } else {
        out << "pattern " << (v.pattern ? "ok" : "fails") << "\ninvertible " << (v.invertible ? "ok" : "fails")
            << "\nintertwines " << (v.intertwines ? "ok" : "fails") << "\nspecial " << (v.special ? "yes" : "no")
            << "\nunit " << (v.unit ? "yes" : "no") << "\nlevel " << to_string(v.level) << "\nclaimed "
            << to_string(cert.level) << ": " << (ok ? "accepted" : "rejected") << '\n';
        for (const auto& n : v.notes) out << "  " << n << '\n';
    }
    if (!ok) throw Verdict{1};
}

void cmd_repl(const Opts& o, const std::string& path, std::istream& in, std::ostream& out) {
    std::vector<Graph> states{load_graph(path)};
    MoveScript script;
    auto show = [&] {
        const auto& g = states.back();
        auto p = to_db(g);
        if (o.machine) {
            json j;
            j["ok"] = true;
            j["graph"] = json::parse(emit_graph(g));
            j["db"] = json::parse(emit_db(p));
            j["k0"] = k0_json(pointed_k0(p));
            out << j.dump() << '\n';
        } else {
            show_graph(out, g);
            show_db(out, p);
            out << "pointed K0: " << str(pointed_k0(p)) << '\n';
        }
    };
    auto refuse = [&](const std::string& why) {
        if (o.machine) out << json{{"ok", false}, {"error", why}}.dump() << '\n';
        else out << "refused: " << why << '\n';
    };
    show();
    std::string line;
    for (;;) {
        if (!o.machine) out << "> " << std::flush;
        if (!std::getline(in, line)) break;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto cmd = line.substr(first);
        while (!cmd.empty() && (cmd.back() == ' ' || cmd.back() == '\r')) cmd.pop_back();
        if (cmd == "quit" || cmd == "exit") break;
        if (cmd == "help") {
            out << "one JSON move per line, or: undo, script, quit\n";
            continue;
        }
        if (cmd == "undo") {
            if (states.size() == 1) {
                refuse("nothing to undo");
                continue;
            }
            states.pop_back();
            script.pop_back();
            show();
            continue;
        }
        if (cmd == "script") {
            out << emit_script(script);
            continue;
        }
        try {
            auto m = parse_move(cmd);
            states.push_back(apply_move(states.back(), m));
            script.push_back(m);
            show();
        } catch (const DomainError& e) {
            refuse(e.what());
        }
    }
    if (!o.output.empty()) write_file(o.output, emit_graph(states.back()));
    if (!o.script_out.empty()) write_file(o.script_out, emit_script(script));
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app("Moves on graphs with countable edge multiplicities, their matrix operations and K-theory.",
                 "graphmoves");
    app.require_subcommand(1);
    app.fallthrough();
    Opts o;
    app.add_flag("--machine", o.machine, "JSON output");
    app.add_option("--seed", o.seed, "accepted; component matching is deterministic");
    app.add_option("--step-budget", o.budget, "move budget for canonicalize")->check(CLI::PositiveNumber);

    std::string a, b, c;
    auto file = [](CLI::App* s, const char* name, std::string& v, const char* what) {
        s->add_option(name, v, what)->required();
    };
    auto outputs = [&](CLI::App* s, bool script) {
        s->add_option("-o,--output", o.output, "write the resulting graph file here");
        if (script) s->add_option("-s,--script-out", o.script_out, "write the move script here");
    };

    auto* validate = app.add_subcommand("validate", "check a graph file");
    file(validate, "graph", a, "graph file");
    auto* info = app.add_subcommand("info", "classes, components, trichotomy, pointed K0, mr");
    file(info, "graph", a, "graph file");
    auto* to_db_cmd = app.add_subcommand("to-db", "print (D, B)");
    file(to_db_cmd, "graph", a, "graph file");
    to_db_cmd->add_option("-o,--output", o.output, "write the pair file here");
    auto* from_db_cmd = app.add_subcommand("from-db", "graph of a (D, B) pair file");
    file(from_db_cmd, "pair", a, "pair file");
    outputs(from_db_cmd, false);
    auto* apply = app.add_subcommand("apply", "replay a move script");
    file(apply, "graph", a, "graph file");
    file(apply, "script", b, "move script, one JSON move per line");
    outputs(apply, false);
    auto* compile_cmd = app.add_subcommand("compile-op", "compile a matrix operation into moves");
    file(compile_cmd, "graph", a, "graph file");
    file(compile_cmd, "op", b, "operation file");
    outputs(compile_cmd, true);
    auto* canon = app.add_subcommand("canonicalize", "bring a graph into canonical form");
    file(canon, "graph", a, "graph file");
    outputs(canon, true);
    auto* check = app.add_subcommand("check-canonical", "evaluate conditions (I)-(IV)");
    file(check, "graph", a, "graph file");
    auto* verify = app.add_subcommand("verify-cert", "verify an equivalence certificate");
    file(verify, "e", a, "graph file E");
    file(verify, "f", b, "graph file F");
    file(verify, "cert", c, "certificate file");
    auto* repl = app.add_subcommand("repl", "apply moves one at a time");
    file(repl, "graph", a, "graph file");
    outputs(repl, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) cmd_validate(o, a, out);
        else if (*info) cmd_info(o, a, out);
        else if (*to_db_cmd) cmd_to_db(o, a, out);
        else if (*from_db_cmd) cmd_from_db(o, a, out);
        else if (*apply) cmd_apply(o, a, b, out);
        else if (*compile_cmd) cmd_compile_op(o, a, b, out);
        else if (*canon) cmd_canonicalize(o, a, out);
        else if (*check) cmd_check_canonical(o, a, out);
        else if (*verify) cmd_verify_cert(o, a, b, c, out);
        else if (*repl) cmd_repl(o, a, in, out);
    } catch (const Verdict& v) {
        return v.code;
    } catch (const DomainError& e) {
        err << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    } catch (const BudgetExceeded& e) {
        err << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << json{{"error", std::string("internal: ") + e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace gm
