#include "kurepa/core.hpp"

#include <algorithm>

namespace kurepa {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::NotInStructure: return "NotInStructure";
        case ErrorCode::MissingComponent: return "MissingComponent";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::InconsistentCarriers: return "InconsistentCarriers";
        case ErrorCode::BadBudget: return "BadBudget";
        case ErrorCode::BadSize: return "BadSize";
        case ErrorCode::WidthExceeded: return "WidthExceeded";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotAFilter: return "NotAFilter";
        case ErrorCode::NotGraded: return "NotGraded";
        case ErrorCode::NotUncountableSurrogate: return "NotUncountableSurrogate";
        case ErrorCode::Usage: return "Usage";
    }
    return "Error";
}

const char* level_kind_name(LevelKind k) {
    switch (k) {
        case LevelKind::Zero: return "zero";
        case LevelKind::Successor: return "successor";
        case LevelKind::Limit: return "limit";
        case LevelKind::Max: return "max";
    }
    return "?";
}

const char* mode_name(Mode m) { return m == Mode::Literal ? "literal" : "surrogate"; }

StructureIndex::StructureIndex(const TauStructure& s) : s_(&s) {
    std::set<std::string> all_ids;
    auto claim = [&](const std::string& id, const char* what) {
        if (id.empty())
            throw Error(ErrorCode::MalformedDocument, std::string("empty ") + what + " id");
        if (!all_ids.insert(id).second)
            throw Error(ErrorCode::MalformedDocument, "duplicate id '" + id + "'");
    };
    for (const auto& p : s.P) {
        claim(p, "urelement");
        p_set_.insert(p);
    }
    for (std::size_t i = 0; i < s.L.size(); ++i) {
        claim(s.L[i].id, "level");
        level_pos_[s.L[i].id] = static_cast<int>(i);
    }
    for (const auto& le : s.L) {
        if (le.kind == LevelKind::Successor) {
            if (!level_pos_.count(le.succ_of))
                throw Error(ErrorCode::MalformedDocument,
                            "successor witness of '" + le.id + "' names no level");
        } else if (!le.succ_of.empty()) {
            throw Error(ErrorCode::MalformedDocument,
                        "level '" + le.id + "' carries a successor witness but is tagged " +
                            level_kind_name(le.kind));
        }
    }
    nodes_at_.resize(s.L.size());
    for (std::size_t i = 0; i < s.V.size(); ++i) {
        const Node& n = s.V[i];
        claim(n.id, "node");
        node_idx_[n.id] = i;
        auto it = level_pos_.find(n.level);
        if (it == level_pos_.end())
            throw Error(ErrorCode::MalformedDocument, "node '" + n.id + "' at unknown level");
        nodes_at_[it->second].push_back(n.id);
    }
    for (auto& v : nodes_at_) std::sort(v.begin(), v.end());

    branch_pos_ = s.L.size() >= 2 ? static_cast<int>(s.L.size()) - 1 : -1;
    for (std::size_t i = 0; i < nodes_at_.size(); ++i) {
        auto& dst = (static_cast<int>(i) == branch_pos_) ? branch_nodes_ : interior_nodes_;
        dst.insert(dst.end(), nodes_at_[i].begin(), nodes_at_[i].end());
    }

    for (const auto& [x, y] : s.T) {
        if (!node_idx_.count(x) || !node_idx_.count(y))
            throw Error(ErrorCode::MalformedDocument, "tree pair (" + x + "," + y + ") names unknown nodes");
        t_set_.insert({x, y});
    }
    auto check_family = [&](const WitnessFamily& fam, bool values_are_nodes, const char* name) {
        for (const auto& [lvl, fn] : fam) {
            if (!level_pos_.count(lvl))
                throw Error(ErrorCode::MalformedDocument,
                            std::string(name) + " keyed by unknown level '" + lvl + "'");
            for (const auto& [p, val] : fn) {
                if (!p_set_.count(p))
                    throw Error(ErrorCode::MalformedDocument,
                                std::string(name) + " entry for unknown urelement '" + p + "'");
                bool ok = values_are_nodes ? node_idx_.count(val) > 0 : level_pos_.count(val) > 0;
                if (!ok)
                    throw Error(ErrorCode::MalformedDocument,
                                std::string(name) + " value '" + val + "' unknown");
            }
        }
    };
    check_family(s.F, false, "F");
    check_family(s.G, true, "G");
    if (s.prec) {
        for (const auto& [x, y] : *s.prec)
            if (!node_idx_.count(x) || !node_idx_.count(y))
                throw Error(ErrorCode::MalformedDocument, "prec pair names unknown nodes");
    }
    if (s.H) {
        for (const auto& [y, fn] : *s.H) {
            if (!node_idx_.count(y))
                throw Error(ErrorCode::MalformedDocument, "H keyed by unknown node '" + y + "'");
            for (const auto& [lvl, val] : fn) {
                if (!level_pos_.count(lvl))
                    throw Error(ErrorCode::MalformedDocument, "H entry at unknown level");
                if (!node_idx_.count(val))
                    throw Error(ErrorCode::MalformedDocument, "H value '" + val + "' unknown");
            }
        }
    }

    for (const auto& n : s.V) {
        std::vector<std::string> pr;
        for (const auto& m : s.V)
            if (t_set_.count({m.id, n.id})) pr.push_back(m.id);
        std::sort(pr.begin(), pr.end(), [&](const std::string& a, const std::string& b) {
            int pa = level_pos_.at(node(a).level), pb = level_pos_.at(node(b).level);
            return pa != pb ? pa < pb : a < b;
        });
        preds_[n.id] = std::move(pr);
    }
    for (const auto& n : s.V) {
        bool succ = false;
        for (const auto& m : interior_nodes_)
            if (t_set_.count({n.id, m})) {
                succ = true;
                break;
            }
        has_interior_succ_[n.id] = succ;
    }
}

int StructureIndex::level_position(const std::string& level_id) const {
    auto it = level_pos_.find(level_id);
    return it == level_pos_.end() ? -1 : it->second;
}

bool StructureIndex::has_node(const std::string& node_id) const { return node_idx_.count(node_id) > 0; }

const Node& StructureIndex::node(const std::string& node_id) const {
    auto it = node_idx_.find(node_id);
    if (it == node_idx_.end())
        throw Error(ErrorCode::NotInStructure, "node '" + node_id + "' not in structure");
    return s_->V[it->second];
}

int StructureIndex::node_level_position(const std::string& node_id) const {
    return level_pos_.at(node(node_id).level);
}

const std::vector<std::string>& StructureIndex::nodes_at(int level_pos) const {
    if (level_pos < 0 || level_pos >= static_cast<int>(nodes_at_.size())) return empty_;
    return nodes_at_[level_pos];
}

bool StructureIndex::t_related(const std::string& x, const std::string& y) const {
    return t_set_.count({x, y}) > 0;
}

const std::vector<std::string>& StructureIndex::preds(const std::string& node_id) const {
    auto it = preds_.find(node_id);
    if (it == preds_.end())
        throw Error(ErrorCode::NotInStructure, "node '" + node_id + "' not in structure");
    return it->second;
}

bool StructureIndex::has_interior_successor(const std::string& node_id) const {
    auto it = has_interior_succ_.find(node_id);
    if (it == has_interior_succ_.end())
        throw Error(ErrorCode::NotInStructure, "node '" + node_id + "' not in structure");
    return it->second;
}

std::vector<std::string> predecessors(const TauStructure& s, const std::string& node_id) {
    StructureIndex ix(s);
    return ix.preds(node_id);
}

std::vector<std::string> chain_through(const StructureIndex& ix, const std::string& node_id) {
    std::vector<std::string> chain = ix.preds(node_id);
    chain.push_back(node_id);
    return chain;
}

std::vector<std::vector<std::string>> materialized_branches(const TauStructure& s) {
    StructureIndex ix(s);
    std::vector<std::vector<std::string>> out;
    for (const auto& x : ix.interior_nodes())
        if (!ix.has_interior_successor(x)) out.push_back(chain_through(ix, x));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace kurepa
