#include "kurepa/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kurepa {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::MalformedDocument, msg); }

std::string want_string(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where + " must be a string");
    return j.get<std::string>();
}

json family_to_json(const WitnessFamily& fam) {
    json out = json::object();
    for (const auto& [key, fn] : fam) {
        json pairs = json::array();
        for (const auto& [a, b] : fn) pairs.push_back(json::array({a, b}));
        out[key] = pairs;
    }
    return out;
}

WitnessFamily family_from_json(const json& j, const std::string& name) {
    if (!j.is_object()) bad(name + " must be an object of pair lists");
    WitnessFamily fam;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_array()) bad(name + "." + it.key() + " must be a pair list");
        auto& fn = fam[it.key()];
        for (const auto& pr : it.value()) {
            if (!pr.is_array() || pr.size() != 2) bad(name + " entry is not a pair");
            std::string a = want_string(pr[0], name + " pair");
            std::string b = want_string(pr[1], name + " pair");
            if (fn.count(a)) bad(name + "." + it.key() + " maps '" + a + "' twice");
            fn[a] = b;
        }
    }
    return fam;
}

json pairs_to_json(const PairList& pl) {
    PairList sorted = pl;
    std::sort(sorted.begin(), sorted.end());
    json out = json::array();
    for (const auto& [a, b] : sorted) out.push_back(json::array({a, b}));
    return out;
}

PairList pairs_from_json(const json& j, const std::string& name) {
    if (!j.is_array()) bad(name + " must be a pair list");
    PairList out;
    for (const auto& pr : j) {
        if (!pr.is_array() || pr.size() != 2) bad(name + " entry is not a pair");
        out.push_back({want_string(pr[0], name), want_string(pr[1], name)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

json structure_to_json(const TauStructure& s) {
    json j;
    auto P = s.P;
    std::sort(P.begin(), P.end());
    j["P"] = P;
    json L = json::array();
    for (const auto& le : s.L) {
        json e;
        e["id"] = le.id;
        e["kind"] = level_kind_name(le.kind);
        if (le.kind == LevelKind::Successor) e["succ_of"] = le.succ_of;
        L.push_back(e);
    }
    j["L"] = L;
    auto nodes = s.V;
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    json V = json::array();
    for (const auto& n : nodes) {
        json e;
        e["id"] = n.id;
        e["level"] = n.level;
        if (n.label) e["label"] = *n.label;
        V.push_back(e);
    }
    j["V"] = V;
    j["T"] = pairs_to_json(s.T);
    j["F"] = family_to_json(s.F);
    j["G"] = family_to_json(s.G);
    if (s.prec) j["prec"] = pairs_to_json(*s.prec);
    if (s.H) j["H"] = family_to_json(*s.H);
    j["mode"] = mode_name(s.mode);
    return j;
}

TauStructure structure_from_json(const json& j) {
    if (!j.is_object()) bad("structure document must be an object");
    for (const char* key : {"P", "L", "V", "T", "F", "G"})
        if (!j.contains(key)) bad(std::string("missing key '") + key + "'");
    static const std::set<std::string> known{"P", "L", "V", "T", "F", "G", "prec", "H", "mode"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) bad("unknown key '" + it.key() + "'");

    TauStructure s;
    if (!j["P"].is_array()) bad("P must be an array");
    for (const auto& p : j["P"]) s.P.push_back(want_string(p, "P entry"));
    std::sort(s.P.begin(), s.P.end());

    if (!j["L"].is_array()) bad("L must be an array");
    for (const auto& e : j["L"]) {
        if (!e.is_object()) bad("L entry must be an object");
        LevelElem le;
        le.id = want_string(e.at("id"), "L id");
        std::string kind = want_string(e.at("kind"), "L kind");
        if (kind == "zero")
            le.kind = LevelKind::Zero;
        else if (kind == "successor")
            le.kind = LevelKind::Successor;
        else if (kind == "limit")
            le.kind = LevelKind::Limit;
        else if (kind == "max")
            le.kind = LevelKind::Max;
        else
            bad("unknown level kind '" + kind + "'");
        if (le.kind == LevelKind::Successor) {
            if (!e.contains("succ_of")) bad("successor level '" + le.id + "' lacks succ_of");
            le.succ_of = want_string(e["succ_of"], "succ_of");
        } else if (e.contains("succ_of")) {
            bad("level '" + le.id + "' carries succ_of but is not a successor");
        }
        s.L.push_back(le);
    }

    if (!j["V"].is_array()) bad("V must be an array");
    for (const auto& e : j["V"]) {
        if (!e.is_object()) bad("V entry must be an object");
        Node n;
        n.id = want_string(e.at("id"), "node id");
        n.level = want_string(e.at("level"), "node level");
        if (e.contains("label")) {
            if (!e["label"].is_number_unsigned()) bad("label of '" + n.id + "' must be a natural");
            n.label = e["label"].get<std::uint64_t>();
        }
        s.V.push_back(n);
    }
    std::sort(s.V.begin(), s.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });

    s.T = pairs_from_json(j["T"], "T");
    s.F = family_from_json(j["F"], "F");
    s.G = family_from_json(j["G"], "G");
    if (j.contains("prec")) s.prec = pairs_from_json(j["prec"], "prec");
    if (j.contains("H")) s.H = family_from_json(j["H"], "H");
    if (j.contains("mode")) {
        std::string m = want_string(j["mode"], "mode");
        if (m == "literal")
            s.mode = Mode::Literal;
        else if (m == "surrogate")
            s.mode = Mode::Surrogate;
        else
            bad("unknown mode '" + m + "'");
    }
    StructureIndex ix(s);  // referential integrity
    (void)ix;
    return s;
}

json tree_to_json(const PrunedTree& t) {
    json j;
    json levels = json::array();
    for (const auto& lv : t.levels) {
        auto sorted = lv;
        std::sort(sorted.begin(), sorted.end());
        levels.push_back(sorted);
    }
    j["levels"] = levels;
    PairList parent;
    for (const auto& [c, p] : t.parent) parent.push_back({c, p});
    j["parent"] = pairs_to_json(parent);
    if (!t.labels.empty()) {
        json labs = json::object();
        for (const auto& [top, ls] : t.labels) labs[top] = ls;
        j["labels"] = labs;
    }
    return j;
}

PrunedTree tree_from_json(const json& j) {
    if (!j.is_object() || !j.contains("levels") || !j.contains("parent"))
        bad("tree document must carry 'levels' and 'parent'");
    PrunedTree t;
    if (!j["levels"].is_array()) bad("levels must be an array of arrays");
    for (const auto& lv : j["levels"]) {
        if (!lv.is_array()) bad("levels must be an array of arrays");
        std::vector<std::string> ids;
        for (const auto& id : lv) ids.push_back(want_string(id, "tree node id"));
        std::sort(ids.begin(), ids.end());
        t.levels.push_back(ids);
    }
    for (const auto& [c, p] : pairs_from_json(j["parent"], "parent")) {
        if (t.parent.count(c)) bad("node '" + c + "' has two parents");
        t.parent[c] = p;
    }
    if (j.contains("labels")) {
        if (!j["labels"].is_object()) bad("labels must be an object");
        for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it) {
            std::vector<std::uint64_t> ls;
            if (!it.value().is_array()) bad("labels entry must be an array");
            for (const auto& v : it.value()) {
                if (!v.is_number_unsigned()) bad("labels must be naturals");
                ls.push_back(v.get<std::uint64_t>());
            }
            std::sort(ls.begin(), ls.end());
            t.labels[it.key()] = ls;
        }
    }
    validate_tree_shape(t);
    return t;
}

std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedDocument, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::MalformedDocument, "cannot write '" + path + "'");
    out << content;
}

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, origin + ": " + e.what());
    }
}

TauStructure load_structure(const std::string& path) {
    return structure_from_json(parse_json_text(read_text_file(path), path));
}

void save_structure(const std::string& path, const TauStructure& s) {
    write_text_file(path, dump_canonical(structure_to_json(s)));
}

PrunedTree load_tree(const std::string& path) {
    return tree_from_json(parse_json_text(read_text_file(path), path));
}

void save_tree(const std::string& path, const PrunedTree& t) {
    write_text_file(path, dump_canonical(tree_to_json(t)));
}

}  // namespace kurepa
