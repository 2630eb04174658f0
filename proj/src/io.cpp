#include "graphmoves/io.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gm {

FormatError::FormatError(const std::string& what, std::size_t l, std::size_t c)
    : DomainError(l ? what + " at line " + std::to_string(l) + ", column " + std::to_string(c) : what),
      line(l),
      column(c) {}

namespace {

using json = nlohmann::json;

struct Pos {
    std::size_t line = 0, col = 0;
};

// start position of every value, keyed by JSON pointer
class PositionIndex {
public:
    explicit PositionIndex(std::string_view t) : t_(t) {
        ws();
        value("");
    }

    [[nodiscard]] Pos find(std::string ptr) const {
        for (;;) {
            if (auto it = at_.find(ptr); it != at_.end()) return it->second;
            if (ptr.empty()) return {};
            ptr.erase(ptr.rfind('/'));
        }
    }

private:
    std::string_view t_;
    std::size_t i_ = 0, line_ = 1, col_ = 1;
    std::map<std::string, Pos> at_;

    void step() {
        if (t_[i_] == '\n') ++line_, col_ = 1;
        else ++col_;
        ++i_;
    }
    void ws() {
        while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n' || t_[i_] == '\r')) step();
    }
    std::string string() {
        auto start = i_;
        step();
        while (t_[i_] != '"') {
            if (t_[i_] == '\\') step();
            step();
        }
        step();
        return json::parse(t_.substr(start, i_ - start)).get<std::string>();
    }
    static std::string escape(const std::string& key) {
        std::string r;
        for (char c : key) {
            if (c == '~') r += "~0";
            else if (c == '/') r += "~1";
            else r += c;
        }
        return r;
    }
    void value(const std::string& ptr) {
        at_[ptr] = {line_, col_};
        char c = t_[i_];
        if (c == '{' || c == '[') {
            step();
            ws();
            for (std::size_t k = 0; t_[i_] != (c == '{' ? '}' : ']'); ++k) {
                std::string sub = ptr + "/" + std::to_string(k);
                if (c == '{') {
                    sub = ptr + "/" + escape(string());
                    ws();
                    step();
                    ws();
                }
                value(sub);
                ws();
                if (t_[i_] == ',') step(), ws();
            }
            step();
        } else if (c == '"') {
            (void)string();
        } else {
            while (i_ < t_.size() && std::string_view(",]} \t\r\n").find(t_[i_]) == std::string_view::npos) step();
        }
    }
};

struct Doc {
    json j;
    PositionIndex pos;

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
        auto p = pos.find(ptr);
        throw FormatError(msg, p.line, p.col);
    }
};

Doc load(std::string_view text) {
    try {
        auto j = json::parse(text);
        return Doc{std::move(j), PositionIndex(text)};
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        auto end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        std::string msg = e.what();
        if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
        throw FormatError("malformed JSON: " + msg, line, col);
    }
}

class Reader {
public:
    explicit Reader(const Doc& d) : d_(d) {}

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const { d_.fail(ptr, msg); }

    const json& object(const json& j, const std::string& ptr, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) const {
        if (!j.is_object()) fail(ptr, "expected an object");
        std::set<std::string> known;
        for (auto k : required) {
            known.insert(k);
            if (!j.contains(k)) fail(ptr, std::string("missing key \"") + k + "\"");
        }
        for (auto k : optional) known.insert(k);
        for (const auto& [k, v] : j.items())
            if (!known.contains(k)) fail(ptr + "/" + k, "unknown key \"" + k + "\"");
        return j;
    }

    const json& array(const json& j, const std::string& ptr) const {
        if (!j.is_array()) fail(ptr, "expected an array");
        return j;
    }

    std::string string(const json& j, const std::string& ptr) const {
        if (!j.is_string()) fail(ptr, "expected a string");
        return j.get<std::string>();
    }

    std::int64_t integer(const json& j, const std::string& ptr) const {
        if (j.is_number_unsigned()) {
            auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) fail(ptr, "integer out of range");
            return static_cast<std::int64_t>(u);
        }
        if (!j.is_number_integer()) fail(ptr, "expected an integer");
        return j.get<std::int64_t>();
    }

    BigInt big(const json& j, const std::string& ptr) const {
        if (j.is_string()) {
            auto s = j.get<std::string>();
            auto body = s.starts_with('-') ? s.substr(1) : s;
            if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) { return c >= '0' && c <= '9'; }))
                fail(ptr, "expected an integer");
            return BigInt(s);
        }
        return integer(j, ptr);
    }

    // integer or "inf"; nonnegative unless `signed_ok`
    ExtInt ext(const json& j, const std::string& ptr, bool signed_ok = false) const {
        if (j.is_string()) {
            if (j.get<std::string>() != "inf") fail(ptr, "expected an integer or \"inf\"");
            return kInf;
        }
        auto v = integer(j, ptr);
        if (v < 0 && !signed_ok) fail(ptr, "negative multiplicity");
        return v;
    }

    std::vector<ExtInt> ext_row(const json& j, const std::string& ptr, bool signed_ok = false) const {
        array(j, ptr);
        std::vector<ExtInt> r;
        for (std::size_t k = 0; k < j.size(); ++k) r.push_back(ext(j[k], ptr + "/" + std::to_string(k), signed_ok));
        return r;
    }

    Matrix<ExtInt> ext_matrix(const json& j, const std::string& ptr, std::size_t cols, bool signed_ok = false) const {
        array(j, ptr);
        Matrix<ExtInt> m(j.size(), cols, 0);
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto p = ptr + "/" + std::to_string(i);
            auto r = ext_row(j[i], p, signed_ok);
            if (r.size() != cols)
                fail(p, "row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(cols));
            for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
        }
        return m;
    }

    std::vector<std::string> strings(const json& j, const std::string& ptr) const {
        array(j, ptr);
        std::vector<std::string> r;
        for (std::size_t k = 0; k < j.size(); ++k) r.push_back(string(j[k], ptr + "/" + std::to_string(k)));
        return r;
    }

    VertexRef vref(const json& j, const std::string& ptr) const {
        if (j.is_string()) return VertexRef(j.get<std::string>());
        auto v = integer(j, ptr);
        if (v < 0) fail(ptr, "negative vertex index");
        return VertexRef(static_cast<std::size_t>(v));
    }

    IntMatrix int_matrix(const json& j, const std::string& ptr) const {
        array(j, ptr);
        std::size_t cols = 0;
        if (!j.empty()) cols = array(j[0], ptr + "/0").size();
        IntMatrix m(j.size(), cols, 0);
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto p = ptr + "/" + std::to_string(i);
            array(j[i], p);
            if (j[i].size() != cols) fail(p, "ragged matrix");
            for (std::size_t c = 0; c < cols; ++c) m(i, c) = big(j[i][c], p + "/" + std::to_string(c));
        }
        return m;
    }

private:
    const Doc& d_;
};

json ext_json(const ExtInt& x) { return x.is_inf() ? json("inf") : json(x.value()); }

json ext_json(const std::vector<ExtInt>& r) {
    json a = json::array();
    for (const auto& x : r) a.push_back(ext_json(x));
    return a;
}

json ext_json(const Matrix<ExtInt>& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(ext_json(m(i, j)));
        a.push_back(r);
    }
    return a;
}

json big_json(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return json(static_cast<std::int64_t>(x));
    return json(x.str());
}

json big_json(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(big_json(m(i, j)));
        a.push_back(r);
    }
    return a;
}

json vref_json(const VertexRef& v) {
    if (auto* i = std::get_if<std::size_t>(&v.v)) return json(*i);
    return json(std::get<std::string>(v.v));
}

std::string dump(const json& j) { return j.dump() + "\n"; }

Move read_move(const Reader& r, const json& j, const std::string& ptr) {
    if (!j.is_object()) r.fail(ptr, "expected an object");
    if (!j.contains("move")) r.fail(ptr, "missing key \"move\"");
    Move m;
    try {
        m.kind = move_kind_from_string(r.string(j["move"], ptr + "/move"));
    } catch (const FormatError&) {
        throw;
    } catch (const DomainError& e) {
        r.fail(ptr + "/move", e.what());
    }
    auto group = [&] {
        const auto& g = r.array(j["group"], ptr + "/group");
        for (std::size_t k = 0; k < g.size(); ++k) m.group.push_back(r.vref(g[k], ptr + "/group/" + std::to_string(k)));
    };
    auto name = [&] {
        if (j.contains("name")) m.name = r.string(j["name"], ptr + "/name");
    };
    switch (m.kind) {
        case MoveKind::O: {
            r.object(j, ptr, {"move", "vertex", "parts"}, {"names"});
            m.vertex = r.vref(j["vertex"], ptr + "/vertex");
            const auto& p = r.array(j["parts"], ptr + "/parts");
            std::size_t cols = p.empty() ? 0 : r.array(p[0], ptr + "/parts/0").size();
            m.parts = r.ext_matrix(p, ptr + "/parts", cols);
            if (j.contains("names")) m.names = r.strings(j["names"], ptr + "/names");
            break;
        }
        case MoveKind::Oinv:
            r.object(j, ptr, {"move", "group"}, {"name"});
            group();
            name();
            break;
        case MoveKind::Iplus: {
            r.object(j, ptr, {"move", "group", "columns"});
            group();
            const auto& c = r.array(j["columns"], ptr + "/columns");
            std::size_t cols = c.empty() ? 0 : r.array(c[0], ptr + "/columns/0").size();
            m.columns = r.ext_matrix(c, ptr + "/columns", cols);
            break;
        }
        case MoveKind::Rplus:
            r.object(j, ptr, {"move", "vertex"}, {"name"});
            m.vertex = r.vref(j["vertex"], ptr + "/vertex");
            name();
            break;
        case MoveKind::Rplusinv: {
            r.object(j, ptr, {"move", "vertex", "spec"}, {"name"});
            m.vertex = r.vref(j["vertex"], ptr + "/vertex");
            auto sp = ptr + "/spec";
            const auto& s = r.object(j["spec"], sp, {"in", "out"}, {"restore"});
            m.in = r.ext_row(s["in"], sp + "/in");
            m.out = r.ext_row(s["out"], sp + "/out");
            if (s.contains("restore")) {
                const auto& rs = r.array(s["restore"], sp + "/restore");
                for (std::size_t k = 0; k < rs.size(); ++k) {
                    auto p = sp + "/restore/" + std::to_string(k);
                    r.array(rs[k], p);
                    if (rs[k].size() != 3) r.fail(p, "expected [from, to, value]");
                    m.restore.push_back({r.vref(rs[k][0], p + "/0"), r.vref(rs[k][1], p + "/1"), r.ext(rs[k][2], p + "/2")});
                }
            }
            name();
            break;
        }
    }
    return m;
}

json move_json(const Move& m) {
    json j;
    j["move"] = to_string(m.kind);
    auto group = [&] {
        json g = json::array();
        for (const auto& v : m.group) g.push_back(vref_json(v));
        j["group"] = g;
    };
    switch (m.kind) {
        case MoveKind::O:
            j["vertex"] = vref_json(m.vertex);
            j["parts"] = ext_json(m.parts);
            if (!m.names.empty()) j["names"] = m.names;
            break;
        case MoveKind::Oinv:
            group();
            break;
        case MoveKind::Iplus:
            group();
            j["columns"] = ext_json(m.columns);
            break;
        case MoveKind::Rplus:
            j["vertex"] = vref_json(m.vertex);
            break;
        case MoveKind::Rplusinv: {
            j["vertex"] = vref_json(m.vertex);
            json s;
            s["in"] = ext_json(m.in);
            s["out"] = ext_json(m.out);
            if (!m.restore.empty()) {
                json rs = json::array();
                for (const auto& c : m.restore) rs.push_back(json::array({vref_json(c.from), vref_json(c.to), ext_json(c.value)}));
                s["restore"] = rs;
            }
            j["spec"] = s;
            break;
        }
    }
    if (m.name && m.kind != MoveKind::O && m.kind != MoveKind::Iplus) j["name"] = *m.name;
    return j;
}

std::size_t op_index(const Reader& r, const json& j, const std::string& ptr, const DBPair& p) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        auto it = std::find(p.labels.begin(), p.labels.end(), s);
        if (it == p.labels.end()) r.fail(ptr, "no vertex named \"" + s + "\" among the non-source vertices");
        return static_cast<std::size_t>(it - p.labels.begin());
    }
    auto v = r.integer(j, ptr);
    if (v < 0 || static_cast<std::size_t>(v) >= p.size()) r.fail(ptr, "index out of range");
    return static_cast<std::size_t>(v);
}

bool uses_dst(OpKind k) { return k == OpKind::RowAdd || k == OpKind::RowSub || k == OpKind::ColAdd; }

}  // namespace

GraphData parse_graph_data(std::string_view text) {
    auto d = load(text);
    Reader r(d);
    const auto& j = r.object(d.j, "", {"vertices", "adjacency"});
    GraphData g;
    g.names = r.strings(j["vertices"], "/vertices");
    auto adj = r.ext_matrix(j["adjacency"], "/adjacency", g.names.size());
    if (adj.rows() != g.names.size())
        r.fail("/adjacency", "adjacency has " + std::to_string(adj.rows()) + " rows for " + std::to_string(g.names.size()) +
                                 " vertices");
    for (std::size_t i = 0; i < adj.rows(); ++i) {
        g.rows.emplace_back();
        for (std::size_t k = 0; k < adj.cols(); ++k) g.rows.back().push_back(adj(i, k));
    }
    return g;
}

Graph parse_graph(std::string_view text) {
    auto g = parse_graph_data(text);
    auto errs = validate_graph(g);
    if (!errs.empty()) throw FormatError(errs.front(), 0, 0);
    return Graph(g);
}

std::string emit_graph(const Graph& g) {
    json j;
    j["vertices"] = g.names();
    j["adjacency"] = ext_json(g.adjacency());
    return dump(j);
}

DBPair parse_db(std::string_view text) {
    auto d = load(text);
    Reader r(d);
    const auto& j = r.object(d.j, "", {"B", "D"}, {"labels"});
    const auto& dj = r.array(j["D"], "/D");
    DBPair p;
    for (std::size_t k = 0; k < dj.size(); ++k) {
        auto v = r.integer(dj[k], "/D/" + std::to_string(k));
        if (v < 0) r.fail("/D/" + std::to_string(k), "antenna counts are nonnegative");
        p.d.push_back(v);
    }
    if (p.d.empty()) r.fail("/D", "a pair needs at least one vertex");
    p.b = r.ext_matrix(j["B"], "/B", p.d.size(), true);
    if (p.b.rows() != p.d.size()) r.fail("/B", "B must be square of the length of D");
    p.labels = j.contains("labels") ? r.strings(j["labels"], "/labels") : default_labels(p.d.size());
    if (p.labels.size() != p.d.size()) r.fail("/labels", "one label per vertex");
    auto errs = validate_db(p);
    if (!errs.empty()) throw FormatError(errs.front(), 0, 0);
    return p;
}

std::string emit_db(const DBPair& p) {
    json j;
    j["B"] = ext_json(p.b);
    j["D"] = p.d;
    j["labels"] = p.labels;
    return dump(j);
}

Move parse_move(std::string_view line) {
    auto d = load(line);
    return read_move(Reader(d), d.j, "");
}

std::string emit_move(const Move& m) { return move_json(m).dump(); }

MoveScript parse_script(std::string_view text) {
    MoveScript s;
    std::size_t line = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line;
        auto l = text.substr(start, end - start);
        if (l.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                s.push_back(parse_move(l));
            } catch (const FormatError& e) {
                std::string msg = e.what();
                if (auto k = msg.rfind(" at line "); k != std::string::npos && e.line) msg.erase(k);
                throw FormatError(msg, line, e.line ? e.column : 1);
            }
        }
        start = end + 1;
    }
    return s;
}

std::string emit_script(const MoveScript& s) {
    std::string r;
    for (const auto& m : s) r += emit_move(m) + "\n";
    return r;
}

OpRecord parse_op(std::string_view text, const DBPair& p) {
    auto d = load(text);
    Reader r(d);
    const auto& j = r.object(d.j, "", {"op", "src"}, {"dst", "z"});
    OpRecord op;
    try {
        op.kind = op_kind_from_string(r.string(j["op"], "/op"));
    } catch (const FormatError&) {
        throw;
    } catch (const DomainError& e) {
        r.fail("/op", e.what());
    }
    op.src = op_index(r, j["src"], "/src", p);
    if (uses_dst(op.kind)) {
        if (!j.contains("dst")) r.fail("", "missing key \"dst\"");
        op.dst = op_index(r, j["dst"], "/dst", p);
    } else if (j.contains("dst")) {
        r.fail("/dst", "this operation takes no dst");
    }
    if (j.contains("z")) {
        if (op.kind != OpKind::RowSub) r.fail("/z", "only rowSub takes z");
        const auto& z = r.array(j["z"], "/z");
        for (std::size_t k = 0; k < z.size(); ++k) op.z.push_back(r.integer(z[k], "/z/" + std::to_string(k)));
        if (op.z.size() != p.size()) r.fail("/z", "z needs one entry per vertex");
    } else if (op.kind == OpKind::RowSub) {
        r.fail("", "missing key \"z\"");
    }
    return op;
}

std::string emit_op(const OpRecord& op) {
    json j;
    j["op"] = to_string(op.kind);
    j["src"] = op.src;
    if (uses_dst(op.kind)) j["dst"] = op.dst;
    if (!op.z.empty()) j["z"] = op.z;
    return dump(j);
}

Certificate parse_certificate(std::string_view text) {
    auto d = load(text);
    Reader r(d);
    const auto& j = r.object(d.j, "", {"U", "V", "level"});
    Certificate c;
    c.u = r.int_matrix(j["U"], "/U");
    c.v = r.int_matrix(j["V"], "/V");
    try {
        c.level = level_from_string(r.string(j["level"], "/level"));
    } catch (const FormatError&) {
        throw;
    } catch (const DomainError& e) {
        r.fail("/level", e.what());
    }
    return c;
}

std::string emit_certificate(const Certificate& c) {
    json j;
    j["U"] = big_json(c.u);
    j["V"] = big_json(c.v);
    j["level"] = to_string(c.level);
    return dump(j);
}

std::string emit_k0(const PointedK0& k) {
    json j;
    json f = json::array(), u = json::array();
    for (const auto& x : k.factors) f.push_back(big_json(x));
    for (const auto& x : k.unit) u.push_back(big_json(x));
    j["factors"] = f;
    j["free_rank"] = k.free_rank;
    j["unit"] = u;
    return j.dump();
}

std::string paren_matrix(const Matrix<ExtInt>& m) {
    std::size_t w = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, m(i, j).str().size());
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << '(';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto s = m(i, j).str();
            os << ' ' << std::string(w - s.size(), ' ') << s;
        }
        os << " )\n";
    }
    return os.str();
}

std::string paren_row(const std::vector<std::int64_t>& v) {
    std::string r = "(";
    for (auto x : v) r += " " + std::to_string(x);
    return r + " )";
}

}  // namespace gm
