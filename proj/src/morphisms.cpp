#include "kurepa/morphisms.hpp"

#include <algorithm>
#include <set>

namespace kurepa {

namespace {

void check_carrier_roles(const TauStructure& m, const TauStructure& n) {
    auto roles = [](const TauStructure& s) {
        std::map<std::string, char> r;
        for (const auto& p : s.P) r[p] = 'P';
        for (const auto& le : s.L) r[le.id] = 'L';
        for (const auto& v : s.V) r[v.id] = 'V';
        return r;
    };
    auto rm = roles(m), rn = roles(n);
    for (const auto& [id, role] : rm) {
        auto it = rn.find(id);
        if (it != rn.end() && it->second != role)
            throw Error(ErrorCode::InconsistentCarriers,
                        "id '" + id + "' is a " + std::string(1, role) + "-element in one structure and a " +
                            std::string(1, it->second) + "-element in the other");
    }
}

std::set<std::string> id_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

// F/G family of m must be the restriction of n's on m's interior levels; at
// m's top level n may carry fresh witness data only when it extends L.
bool family_restricts(const WitnessFamily& fm, const WitnessFamily& fn,
                      const std::vector<LevelElem>& Lm, bool heights_equal,
                      const std::set<std::string>& Pm) {
    for (std::size_t i = 0; i < Lm.size(); ++i) {
        bool top = i + 1 == Lm.size();
        if (top && !heights_equal) continue;
        const std::string& lvl = Lm[i].id;
        auto itm = fm.find(lvl);
        auto itn = fn.find(lvl);
        std::map<std::string, std::string> restricted;
        if (itn != fn.end())
            for (const auto& [p, v] : itn->second)
                if (Pm.count(p)) restricted[p] = v;
        const std::map<std::string, std::string> empty;
        const auto& mine = itm == fm.end() ? empty : itm->second;
        if (mine != restricted) return false;
    }
    // keys outside L^m would be junk in a validated m; treat them as data
    for (const auto& [lvl, fn_] : fm) {
        (void)fn_;
        bool known = false;
        for (const auto& le : Lm)
            if (le.id == lvl) known = true;
        if (!known) return false;
    }
    return true;
}

bool compute_is_sub(const TauStructure& m, const TauStructure& n, SentenceId sentence) {
    // carriers
    std::set<std::string> Pm = id_set(m.P), Pn = id_set(n.P);
    if (sentence == SentenceId::Psi) {
        if (Pm != Pn) return false;
    } else {
        if (!std::includes(Pn.begin(), Pn.end(), Pm.begin(), Pm.end())) return false;
    }
    // L^m must be a position prefix of L^n with coherent tags
    if (m.L.size() > n.L.size()) return false;
    for (std::size_t i = 0; i < m.L.size(); ++i) {
        const LevelElem& a = m.L[i];
        const LevelElem& b = n.L[i];
        if (a.id != b.id) return false;
        bool top = i + 1 == m.L.size();
        if (!top) {
            if (a.kind != b.kind || a.succ_of != b.succ_of) return false;
        } else {
            bool same = a.kind == b.kind && a.succ_of == b.succ_of;
            bool relaxed = a.kind == LevelKind::Max &&
                           (b.kind == LevelKind::Limit || b.kind == LevelKind::Max);
            if (!same && !relaxed) return false;
        }
    }
    bool heights_equal = m.L.size() == n.L.size();

    StructureIndex im(m), in_(n);
    for (const auto& v : m.V) {
        if (!in_.has_node(v.id)) return false;
        const Node& w = in_.node(v.id);
        if (w.level != v.level) return false;
        bool m_branch = im.branch_level_pos() >= 0 &&
                        im.node_level_position(v.id) == im.branch_level_pos();
        bool n_branch = in_.branch_level_pos() >= 0 &&
                        in_.node_level_position(v.id) == in_.branch_level_pos();
        if (m_branch && !n_branch) continue;  // labels drop under end extension
        if (v.label != w.label) return false;
    }
    // tree order restricts exactly
    std::set<std::string> Vm;
    for (const auto& v : m.V) Vm.insert(v.id);
    std::set<std::pair<std::string, std::string>> tm(m.T.begin(), m.T.end());
    std::set<std::pair<std::string, std::string>> tn_restricted;
    for (const auto& [x, y] : n.T)
        if (Vm.count(x) && Vm.count(y)) tn_restricted.insert({x, y});
    if (tm != tn_restricted) return false;

    if (!family_restricts(m.F, n.F, m.L, heights_equal, Pm)) return false;
    if (!family_restricts(m.G, n.G, m.L, heights_equal, Pm)) return false;

    if (m.prec) {
        if (!n.prec) return false;
        std::set<std::pair<std::string, std::string>> pm(m.prec->begin(), m.prec->end());
        std::set<std::pair<std::string, std::string>> pn;
        for (const auto& [x, y] : *n.prec)
            if (Vm.count(x) && Vm.count(y)) pn.insert({x, y});
        if (pm != pn) return false;
    }
    if (m.H) {
        if (!n.H) return false;
        std::set<std::string> Lm;
        for (const auto& le : m.L) Lm.insert(le.id);
        for (const auto& [y, fn] : *m.H) {
            auto it = n.H->find(y);
            if (it == n.H->end()) return false;
            std::map<std::string, std::string> restricted;
            for (const auto& [lvl, v] : it->second)
                if (Lm.count(lvl) && Vm.count(v)) restricted[lvl] = v;
            if (fn != restricted) return false;
        }
    }
    return true;
}

}  // namespace

EmbeddingReport is_substructure_model(const TauStructure& m, const TauStructure& n,
                                      SentenceId sentence) {
    check_carrier_roles(m, n);
    EmbeddingReport rep;
    rep.is_sub = compute_is_sub(m, n, sentence);

    // report fields from the raw data, not from the decision above
    std::map<std::string, std::size_t> n_pos;
    for (std::size_t i = 0; i < n.L.size(); ++i) n_pos[n.L[i].id] = i;
    rep.l_initial_segment = true;
    for (std::size_t i = 0; i < m.L.size(); ++i) {
        auto it = n_pos.find(m.L[i].id);
        if (it == n_pos.end() || it->second != i) rep.l_initial_segment = false;
    }

    StructureIndex im(m), in_(n);
    rep.levels_equal = true;
    // levels below m's greatest element; the greatest is exempt (no witness
    // surjection pins it from m's side)
    int m_interior = static_cast<int>(m.L.size()) - 1;
    for (int i = 0; i < m_interior; ++i) {
        if (i >= static_cast<int>(n.L.size())) {
            rep.levels_equal = false;
            break;
        }
        if (im.nodes_at(i) != in_.nodes_at(i)) rep.levels_equal = false;
    }

    std::set<std::string> Vm;
    for (const auto& v : m.V) Vm.insert(v.id);
    std::set<std::pair<std::string, std::string>> tm(m.T.begin(), m.T.end());
    std::set<std::pair<std::string, std::string>> tn;
    for (const auto& [x, y] : n.T)
        if (Vm.count(x) && Vm.count(y)) tn.insert({x, y});
    rep.order_preserved = tm == tn;

    std::set<std::string> m_branches(im.branch_nodes().begin(), im.branch_nodes().end());
    for (const auto& b : in_.branch_nodes())
        if (!m_branches.count(b)) ++rep.new_branch_count;
    return rep;
}

namespace {

std::string fresh_id(const TauStructure& s, const std::string& stem) {
    std::set<std::string> used;
    for (const auto& p : s.P) used.insert(p);
    for (const auto& le : s.L) used.insert(le.id);
    for (const auto& v : s.V) used.insert(v.id);
    for (std::size_t k = 0;; ++k) {
        std::string cand = stem + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

TauStructure with_branch(const TauStructure& m, const std::vector<std::string>& chain,
                         std::optional<std::uint64_t> label) {
    TauStructure n = m;
    std::string bid = fresh_id(m, "bx");
    n.V.push_back({bid, m.L.back().id, label});
    std::sort(n.V.begin(), n.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (const auto& y : chain) n.T.push_back({y, bid});
    std::sort(n.T.begin(), n.T.end());
    return n;
}

TauStructure end_extended(const TauStructure& m) {
    TauStructure n = m;
    if (n.L.back().kind == LevelKind::Max) n.L.back().kind = LevelKind::Limit;
    const std::string old_max_id = n.L.back().id;
    LevelElem fresh;
    fresh.id = fresh_id(m, "lx");
    fresh.kind = LevelKind::Max;
    n.L.push_back(fresh);
    std::vector<std::string> at_old;
    for (auto& v : n.V)
        if (v.level == old_max_id) {
            v.label.reset();  // interior nodes carry no branch identity
            at_old.push_back(v.id);
        }
    if (at_old.empty()) {
        std::string vid = fresh_id(n, "vx");
        n.V.push_back({vid, old_max_id, {}});
        at_old.push_back(vid);
    }
    std::sort(at_old.begin(), at_old.end());
    std::sort(n.V.begin(), n.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });

    auto& f = n.F[old_max_id];
    auto& g = n.G[old_max_id];
    for (std::size_t k = 0; k < n.P.size(); ++k) {
        f[n.P[k]] = n.L[std::min(k, n.L.size() - 2)].id;
        g[n.P[k]] = at_old[std::min(k, at_old.size() - 1)];
    }
    return n;
}

}  // namespace

std::optional<TauStructure> find_proper_extension(const TauStructure& m, std::size_t budget,
                                                  const CheckOptions& opts) {
    if (budget < m.universe_size())
        throw Error(ErrorCode::BadBudget, "budget below the structure's own size");
    Verdict v = check(m, SentenceId::Psi, opts);
    if (!v.ok)
        throw Error(ErrorCode::PreconditionFailed, "find_proper_extension requires a validated model");

    Mode mode = opts.mode_override.value_or(m.mode);
    StructureIndex ix(m);
    auto try_candidate = [&](const TauStructure& cand) -> bool {
        if (cand.universe_size() > budget) return false;
        if (!check(cand, SentenceId::Psi, opts).ok) return false;
        return is_substructure_model(m, cand).is_sub;
    };

    if (m.L.size() >= 2 && m.universe_size() + 1 <= budget) {
        auto chains = materialized_branches(m);
        std::set<std::vector<std::string>> used;
        for (const auto& b : ix.branch_nodes()) used.insert(ix.preds(b));

        for (const auto& chain : chains) {
            if (used.count(chain)) continue;
            TauStructure cand = with_branch(m, chain, {});
            if (try_candidate(cand)) return cand;
        }
        if (mode == Mode::Surrogate) {
            std::set<std::uint64_t> taken;
            for (const auto& v2 : m.V)
                if (v2.label) taken.insert(*v2.label);
            std::uint64_t fresh = 0;
            while (taken.count(fresh)) ++fresh;
            for (const auto& chain : chains) {
                TauStructure cand = with_branch(m, chain, fresh);
                if (try_candidate(cand)) return cand;
            }
        }
    }

    Classification cl = classify(m, opts);
    if (cl.l_kind == LKind::ShortL && !m.L.empty()) {
        TauStructure cand = end_extended(m);
        if (try_candidate(cand)) return cand;
    }
    return std::nullopt;
}

}  // namespace kurepa
