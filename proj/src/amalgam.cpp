#include "kurepa/amalgam.hpp"

#include <algorithm>
#include <set>

#include "kurepa/morphisms.hpp"

namespace kurepa {

namespace {

struct BranchData {
    std::string id;
    std::vector<std::string> preds;
    std::optional<std::uint64_t> label;
};

std::vector<BranchData> new_branches(const TauStructure& base, const TauStructure& ext) {
    StructureIndex ib(base), ie(ext);
    std::set<std::string> base_branches(ib.branch_nodes().begin(), ib.branch_nodes().end());
    std::vector<BranchData> out;
    for (const auto& b : ie.branch_nodes()) {
        if (base_branches.count(b)) continue;
        out.push_back({b, ie.preds(b), ie.node(b).label});
    }
    return out;
}

std::pair<std::vector<std::string>, std::optional<std::uint64_t>> ident_key(const BranchData& b,
                                                                            Mode mode) {
    if (mode == Mode::Surrogate) return {b.preds, b.label};
    return {b.preds, std::nullopt};
}

}  // namespace

AmalgamResult amalgamate(const TauStructure& m0, const TauStructure& m1, const TauStructure& m2,
                         const CheckOptions& opts) {
    if (m0.mode != m1.mode || m0.mode != m2.mode)
        throw Error(ErrorCode::PreconditionFailed, "amalgamation inputs must share one mode");
    for (const TauStructure* s : {&m0, &m1, &m2})
        if (!check(*s, SentenceId::Psi, opts).ok)
            throw Error(ErrorCode::PreconditionFailed, "amalgamation inputs must validate");
    for (const TauStructure* s : {&m0, &m1, &m2})
        if (classify(*s, opts).l_kind != LKind::LongL)
            throw Error(ErrorCode::NotUncountableSurrogate,
                        "amalgamation is only guaranteed for longL inputs");
    if (m1.L != m0.L || m2.L != m0.L)
        throw Error(ErrorCode::PreconditionFailed, "level orders of the triple do not coincide");
    if (!is_substructure_model(m0, m1).is_sub || !is_substructure_model(m0, m2).is_sub)
        throw Error(ErrorCode::PreconditionFailed, "base is not a substructure of both sides");

    Mode mode = opts.mode_override.value_or(m0.mode);
    auto left = new_branches(m0, m1);
    auto right = new_branches(m0, m2);

    // same id on both sides must mean the same branch
    for (const auto& l : left)
        for (const auto& r : right)
            if (l.id == r.id && (l.preds != r.preds || l.label != r.label))
                throw Error(ErrorCode::InconsistentCarriers,
                            "branch id '" + l.id + "' carries conflicting data");

    TauStructure n = m0;
    PairList identified;
    std::set<std::string> taken;
    for (const auto& v : n.V) taken.insert(v.id);

    auto add_branch = [&](const BranchData& b) {
        if (taken.count(b.id)) return;  // shared id, already present
        taken.insert(b.id);
        n.V.push_back({b.id, n.L.back().id, b.label});
        for (const auto& y : b.preds) n.T.push_back({y, b.id});
    };

    for (const auto& l : left) add_branch(l);
    for (const auto& r : right) {
        bool matched = false;
        for (const auto& l : left)
            if (ident_key(l, mode) == ident_key(r, mode)) {
                identified.push_back({l.id, r.id});
                matched = true;
                break;
            }
        if (!matched) add_branch(r);
    }

    std::sort(n.V.begin(), n.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(n.T.begin(), n.T.end());
    n.T.erase(std::unique(n.T.begin(), n.T.end()), n.T.end());
    std::sort(identified.begin(), identified.end());
    return {std::move(n), std::move(identified)};
}

namespace {

bool carrier_roles_compatible(const TauStructure& m, const TauStructure& n) {
    std::map<std::string, char> roles;
    for (const auto& p : m.P) roles[p] = 'P';
    for (const auto& le : m.L) roles[le.id] = 'L';
    for (const auto& v : m.V) roles[v.id] = 'V';
    for (const auto& p : n.P)
        if (auto it = roles.find(p); it != roles.end() && it->second != 'P') return false;
    for (const auto& le : n.L)
        if (auto it = roles.find(le.id); it != roles.end() && it->second != 'L') return false;
    for (const auto& v : n.V)
        if (auto it = roles.find(v.id); it != roles.end() && it->second != 'V') return false;
    return true;
}

TauStructure end_extend_union(const TauStructure& w0) {
    TauStructure n = w0;
    if (n.L.empty()) return n;
    if (n.L.back().kind == LevelKind::Max) n.L.back().kind = LevelKind::Limit;
    const std::string old_max = n.L.back().id;
    std::set<std::string> used;
    for (const auto& p : n.P) used.insert(p);
    for (const auto& le : n.L) used.insert(le.id);
    for (const auto& v : n.V) used.insert(v.id);
    std::string fresh = "lx0";
    for (std::size_t k = 0; used.count(fresh); ++k) fresh = "lx" + std::to_string(k);
    n.L.push_back({fresh, LevelKind::Max, ""});
    std::vector<std::string> at_old;
    for (auto& v : n.V)
        if (v.level == old_max) {
            v.label.reset();
            at_old.push_back(v.id);
        }
    if (at_old.empty()) {
        std::string vid = "vx0";
        for (std::size_t k = 0; used.count(vid); ++k) vid = "vx" + std::to_string(k);
        n.V.push_back({vid, old_max, {}});
        at_old.push_back(vid);
        std::sort(n.V.begin(), n.V.end(),
                  [](const Node& a, const Node& b) { return a.id < b.id; });
    }
    std::sort(at_old.begin(), at_old.end());
    auto& f = n.F[old_max];
    auto& g = n.G[old_max];
    for (std::size_t k = 0; k < n.P.size(); ++k) {
        f[n.P[k]] = n.L[std::min(k, n.L.size() - 2)].id;
        g[n.P[k]] = at_old[std::min(k, at_old.size() - 1)];
    }
    return n;
}

}  // namespace

std::optional<TauStructure> joint_embed_search(const TauStructure& m, const TauStructure& n,
                                               std::size_t extra_budget,
                                               const CheckOptions& opts) {
    for (const TauStructure* s : {&m, &n})
        if (!check(*s, SentenceId::Psi, opts).ok)
            throw Error(ErrorCode::PreconditionFailed, "joint embedding inputs must validate");
    if (m.mode != n.mode)
        throw Error(ErrorCode::PreconditionFailed, "joint embedding inputs must share one mode");
    if (!carrier_roles_compatible(m, n)) return std::nullopt;

    // Unequal heights: the taller side pins every carrier the union could
    // have, so it is the only candidate.
    if (m.L.size() != n.L.size()) {
        const TauStructure& shorter = m.L.size() < n.L.size() ? m : n;
        const TauStructure& taller = m.L.size() < n.L.size() ? n : m;
        if (is_substructure_model(shorter, taller).is_sub) return taller;
        return std::nullopt;
    }
    if (m == n) return m;

    // Equal heights: everything but the branch level must agree exactly.
    if (m.P != n.P || m.L != n.L || m.F != n.F || m.G != n.G) return std::nullopt;
    StructureIndex im(m), in_(n);
    for (std::size_t i = 0; i + 1 < m.L.size(); ++i)
        if (im.nodes_at(static_cast<int>(i)) != in_.nodes_at(static_cast<int>(i)))
            return std::nullopt;
    // shared branch nodes must agree on data; tree order must agree on shared
    // carriers
    std::set<std::string> shared;
    for (const auto& v : m.V)
        if (in_.has_node(v.id)) {
            shared.insert(v.id);
            const Node& other = in_.node(v.id);
            if (other.level != v.level || other.label != v.label) return std::nullopt;
        }
    std::set<std::pair<std::string, std::string>> tm, tn;
    for (const auto& [x, y] : m.T)
        if (shared.count(x) && shared.count(y)) tm.insert({x, y});
    for (const auto& [x, y] : n.T)
        if (shared.count(x) && shared.count(y)) tn.insert({x, y});
    if (tm != tn) return std::nullopt;

    TauStructure w0 = m;
    for (const auto& v : n.V)
        if (!im.has_node(v.id)) w0.V.push_back(v);
    std::sort(w0.V.begin(), w0.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    w0.T.insert(w0.T.end(), n.T.begin(), n.T.end());
    std::sort(w0.T.begin(), w0.T.end());
    w0.T.erase(std::unique(w0.T.begin(), w0.T.end()), w0.T.end());

    std::size_t limit = w0.universe_size() + extra_budget;
    auto admissible = [&](const TauStructure& w) {
        return w.universe_size() <= limit && check(w, SentenceId::Psi, opts).ok &&
               is_substructure_model(m, w).is_sub && is_substructure_model(n, w).is_sub;
    };
    if (admissible(w0)) return w0;
    TauStructure w1 = end_extend_union(w0);
    if (admissible(w1)) return w1;
    return std::nullopt;
}

namespace {

TauStructure long_chain_model(std::size_t size, bool limit_at_last_interior,
                              const std::string& variant_tag) {
    // |L| = size, c = size - 1, one node per interior level, empty branch set
    TauStructure s;
    s.mode = Mode::Literal;
    std::size_t c = size - 1;
    for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));
    for (std::size_t i = 0; i < size; ++i) {
        LevelElem le;
        bool differing = (i == size - 2);
        le.id = differing ? "l" + std::to_string(i) + variant_tag : "l" + std::to_string(i);
        if (i == 0)
            le.kind = LevelKind::Zero;
        else if (i == size - 1)
            le.kind = LevelKind::Max;
        else if (differing && limit_at_last_interior)
            le.kind = LevelKind::Limit;
        else {
            le.kind = LevelKind::Successor;
            le.succ_of = s.L.back().id;
        }
        s.L.push_back(le);
    }
    for (std::size_t i = 0; i + 1 < size; ++i) {
        std::string vid = (i == size - 2) ? "v" + std::to_string(i) + variant_tag
                                          : "v" + std::to_string(i);
        s.V.push_back({vid, s.L[i].id, {}});
        for (std::size_t j = 0; j < i; ++j) s.T.push_back({s.V[j].id, vid});
    }
    for (std::size_t i = 0; i + 1 < size; ++i) {
        auto& f = s.F[s.L[i].id];
        auto& g = s.G[s.L[i].id];
        for (std::size_t k = 0; k < c; ++k) {
            f[s.P[k]] = s.L[std::min(k, i)].id;
            g[s.P[k]] = s.V[i].id;
        }
    }
    std::sort(s.V.begin(), s.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(s.T.begin(), s.T.end());
    return s;
}

}  // namespace

std::pair<TauStructure, TauStructure> jep_witness(std::size_t size) {
    if (size < 4) throw Error(ErrorCode::BadSize, "jep witness needs size >= 4");
    TauStructure a = long_chain_model(size, false, "s");
    TauStructure b = long_chain_model(size, true, "t");
    return {a, b};
}

ApWitness ap_failure_witness() {
    const std::size_t c = 3;
    auto base = [&]() {
        TauStructure s;
        s.mode = Mode::Literal;
        for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));
        return s;
    };
    ApWitness w;
    // m0: two materialized levels, one interior node, empty branch set
    w.m0 = base();
    w.m0.L.push_back({"z", LevelKind::Zero, ""});
    w.m0.L.push_back({"m", LevelKind::Max, ""});
    w.m0.V.push_back({"v0", "z", {}});
    for (std::size_t k = 0; k < c; ++k) {
        w.m0.F["z"][w.m0.P[k]] = "z";
        w.m0.G["z"][w.m0.P[k]] = "v0";
    }
    auto extend = [&](bool succ_tag, const std::string& tag) {
        TauStructure s = w.m0;
        s.L[1].kind = LevelKind::Limit;  // old max becomes interior
        LevelElem e;
        e.id = "e" + tag;
        if (succ_tag) {
            e.kind = LevelKind::Successor;
            e.succ_of = "m";
        } else {
            e.kind = LevelKind::Limit;
        }
        s.L.push_back(e);
        s.L.push_back({"m" + tag, LevelKind::Max, ""});
        s.V.push_back({"w0", "m", {}});
        s.V.push_back({"u" + tag, e.id, {}});
        s.T.push_back({"v0", "w0"});
        s.T.push_back({"v0", "u" + tag});
        s.T.push_back({"w0", "u" + tag});
        for (std::size_t k = 0; k < c; ++k) {
            s.F["m"][s.P[k]] = s.L[std::min(k, std::size_t(1))].id;
            s.G["m"][s.P[k]] = "w0";
            s.F[e.id][s.P[k]] = s.L[std::min(k, std::size_t(2))].id;
            s.G[e.id][s.P[k]] = "u" + tag;
        }
        std::sort(s.V.begin(), s.V.end(),
                  [](const Node& a, const Node& b) { return a.id < b.id; });
        std::sort(s.T.begin(), s.T.end());
        return s;
    };
    w.m1 = extend(true, "s");
    w.m2 = extend(false, "t");
    return w;
}

}  // namespace kurepa
