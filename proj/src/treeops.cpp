#include "kurepa/treeops.hpp"

#include <algorithm>
#include <set>

namespace kurepa {

std::size_t PrunedTree::node_count() const {
    std::size_t n = 0;
    for (const auto& lv : levels) n += lv.size();
    return n;
}

namespace {

std::map<std::string, int> node_levels(const PrunedTree& t) {
    std::map<std::string, int> out;
    for (std::size_t j = 0; j < t.levels.size(); ++j)
        for (const auto& id : t.levels[j]) out[id] = static_cast<int>(j);
    return out;
}

std::set<std::string> nodes_with_children(const PrunedTree& t) {
    std::set<std::string> out;
    for (const auto& [child, par] : t.parent) {
        (void)child;
        out.insert(par);
    }
    return out;
}

}  // namespace

void validate_tree_shape(const PrunedTree& t) {
    std::set<std::string> seen;
    for (const auto& lv : t.levels)
        for (const auto& id : lv) {
            if (id.empty()) throw Error(ErrorCode::MalformedDocument, "empty tree node id");
            if (!seen.insert(id).second)
                throw Error(ErrorCode::MalformedDocument, "duplicate tree node '" + id + "'");
        }
    auto lvl = node_levels(t);
    for (const auto& [child, par] : t.parent) {
        auto ic = lvl.find(child), ip = lvl.find(par);
        if (ic == lvl.end() || ip == lvl.end())
            throw Error(ErrorCode::MalformedDocument, "parent pair names unknown nodes");
        if (ic->second != ip->second + 1)
            throw Error(ErrorCode::MalformedDocument,
                        "parent of '" + child + "' is not one level down");
    }
    for (const auto& [top, labs] : t.labels) {
        if (!lvl.count(top))
            throw Error(ErrorCode::MalformedDocument, "labels keyed by unknown node '" + top + "'");
        if (!std::is_sorted(labs.begin(), labs.end()))
            throw Error(ErrorCode::MalformedDocument, "label list for '" + top + "' not sorted");
    }
}

std::vector<std::string> chain_tops(const PrunedTree& t) {
    auto parents = nodes_with_children(t);
    std::vector<std::string> out;
    for (const auto& lv : t.levels)
        for (const auto& id : lv)
            if (!parents.count(id)) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_branches(const PrunedTree& t) { return chain_tops(t).size(); }

bool is_pruned(const PrunedTree& t) {
    if (t.empty()) return true;
    auto lvl = node_levels(t);
    int top = static_cast<int>(t.height()) - 1;
    for (const auto& id : chain_tops(t))
        if (lvl[id] != top) return false;
    return true;
}

PrunedTree prune(const PrunedTree& t) {
    if (t.empty()) return t;
    // alive = nodes with a descendant at the top level
    std::set<std::string> alive;
    for (const auto& id : t.levels.back()) alive.insert(id);
    for (std::size_t j = t.height() - 1; j-- > 0;)
        for (const auto& [child, par] : t.parent)
            if (alive.count(child)) alive.insert(par);

    PrunedTree out;
    out.levels.resize(t.height());
    bool any = false;
    for (std::size_t j = 0; j < t.height(); ++j)
        for (const auto& id : t.levels[j])
            if (alive.count(id)) {
                out.levels[j].push_back(id);
                any = true;
            }
    if (!any) return PrunedTree{};
    for (const auto& [child, par] : t.parent)
        if (alive.count(child)) out.parent[child] = par;
    for (const auto& [top, labs] : t.labels)
        if (alive.count(top)) out.labels[top] = labs;
    return out;
}

std::vector<std::vector<std::string>> tree_maximal_chains(const PrunedTree& t) {
    std::vector<std::vector<std::string>> out;
    for (const auto& top : chain_tops(t)) {
        std::vector<std::string> chain{top};
        std::string cur = top;
        while (t.parent.count(cur)) {
            cur = t.parent.at(cur);
            chain.push_back(cur);
        }
        std::reverse(chain.begin(), chain.end());
        out.push_back(std::move(chain));
    }
    std::sort(out.begin(), out.end());
    return out;
}

TauStructure encode_tree(const PrunedTree& t, std::size_t c, bool with_branch_level) {
    validate_tree_shape(t);
    for (const auto& lv : t.levels) {
        if (lv.size() > c)
            throw Error(ErrorCode::WidthExceeded,
                        "tree level wider than c = " + std::to_string(c));
        if (lv.empty() && c > 0)
            throw Error(ErrorCode::WidthExceeded, "empty tree level cannot meet the G-surjection");
    }
    if (t.height() > c)
        throw Error(ErrorCode::WidthExceeded,
                    "tree height " + std::to_string(t.height()) +
                        " exceeds c = " + std::to_string(c) + "; F cannot surject");

    TauStructure s;
    s.mode = Mode::Surrogate;
    for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));

    std::size_t h = t.height();
    for (std::size_t j = 0; j < h; ++j) {
        LevelElem le;
        le.id = "l" + std::to_string(j);
        if (j == 0)
            le.kind = LevelKind::Zero;
        else {
            le.kind = LevelKind::Successor;
            le.succ_of = "l" + std::to_string(j - 1);
        }
        s.L.push_back(le);
    }
    LevelElem max_elem;
    max_elem.id = "l" + std::to_string(h);
    max_elem.kind = h == 0 ? LevelKind::Zero : LevelKind::Max;
    s.L.push_back(max_elem);

    std::set<std::string> used;
    for (const auto& lv : t.levels) used.insert(lv.begin(), lv.end());
    std::string bp = "b";
    while (true) {
        bool clash = false;
        for (const auto& id : used)
            if (id.rfind(bp, 0) == 0) {
                clash = true;
                break;
            }
        if (!clash) break;
        bp += "b";
    }

    for (std::size_t j = 0; j < h; ++j)
        for (const auto& id : t.levels[j]) s.V.push_back({id, "l" + std::to_string(j), {}});

    // tree order = ancestor closure
    for (std::size_t j = 0; j < h; ++j)
        for (const auto& id : t.levels[j]) {
            std::string cur = id;
            while (t.parent.count(cur)) {
                cur = t.parent.at(cur);
                s.T.push_back({cur, id});
            }
        }

    auto chains = tree_maximal_chains(t);
    if (with_branch_level) {
        std::size_t k = 0;
        std::uint64_t next_label = 0;
        for (const auto& chain : chains) {
            const std::string& top = chain.back();
            std::vector<std::uint64_t> labs;
            if (t.labels.empty())
                labs.push_back(next_label++);
            else if (auto it = t.labels.find(top); it != t.labels.end())
                labs = it->second;
            for (auto lab : labs) {
                std::string bid = bp + std::to_string(k++);
                s.V.push_back({bid, max_elem.id, lab});
                for (const auto& y : chain) s.T.push_back({y, bid});
            }
        }
    }

    for (std::size_t j = 0; j < h; ++j) {
        const std::string lvl = "l" + std::to_string(j);
        auto& f = s.F[lvl];
        auto& g = s.G[lvl];
        for (std::size_t k = 0; k < c; ++k) {
            f[s.P[k]] = "l" + std::to_string(std::min(k, j));
            const auto& nodes = t.levels[j];
            g[s.P[k]] = nodes[std::min(k, nodes.size() - 1)];
        }
    }

    std::sort(s.V.begin(), s.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(s.T.begin(), s.T.end());
    s.T.erase(std::unique(s.T.begin(), s.T.end()), s.T.end());
    return s;
}

PrunedTree decode_structure(const TauStructure& s) {
    StructureIndex ix(s);
    int interior_count = s.L.size() >= 2 ? static_cast<int>(s.L.size()) - 1
                                         : static_cast<int>(s.L.size());
    PrunedTree t;
    t.levels.resize(interior_count);
    for (int j = 0; j < interior_count; ++j) t.levels[j] = ix.nodes_at(j);

    for (const auto& id : ix.interior_nodes()) {
        int pos = ix.node_level_position(id);
        if (pos == 0 || ix.preds(id).empty()) continue;  // roots may sit at any level
        std::string par;
        for (const auto& y : ix.preds(id))
            if (ix.node_level_position(y) == pos - 1) par = y;
        if (par.empty())
            throw Error(ErrorCode::NotGraded,
                        "node '" + id + "' has no predecessor one level down");
        t.parent[id] = par;
    }
    for (const auto& b : ix.branch_nodes()) {
        const auto& lab = ix.node(b).label;
        if (!lab) continue;
        const auto& pr = ix.preds(b);
        if (pr.empty()) continue;
        t.labels[pr.back()].push_back(*lab);
    }
    for (auto& [top, labs] : t.labels) std::sort(labs.begin(), labs.end());
    bool any = false;
    for (const auto& lv : t.levels)
        if (!lv.empty()) any = true;
    if (!any) return PrunedTree{};
    return t;
}

PrunedTree merge_shifted(const std::vector<PrunedTree>& trees) {
    if (trees.empty())
        throw Error(ErrorCode::PreconditionFailed, "merge of an empty sequence");
    if (trees.size() == 1) return trees.front();
    std::size_t height = 0;
    for (std::size_t i = 0; i < trees.size(); ++i)
        height = std::max(height, i + trees[i].height());
    PrunedTree out;
    out.levels.resize(height);
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const std::string prefix = "t" + std::to_string(i) + "/";
        const PrunedTree& t = trees[i];
        for (std::size_t j = 0; j < t.height(); ++j)
            for (const auto& id : t.levels[j]) out.levels[i + j].push_back(prefix + id);
        for (const auto& [child, par] : t.parent) out.parent[prefix + child] = prefix + par;
        for (const auto& [top, labs] : t.labels) out.labels[prefix + top] = labs;
    }
    for (auto& lv : out.levels) std::sort(lv.begin(), lv.end());
    return out;
}

}  // namespace kurepa
