#include "kurepa/canonical.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace kurepa {

namespace {

struct Perm {
    // node order per level (indices into nodes_at), and urelement order
    std::vector<std::vector<std::size_t>> nodes;
    std::vector<std::size_t> p;
};

struct Workspace {
    const TauStructure* s;
    StructureIndex ix;
    std::vector<std::vector<std::string>> at;  // per level, sorted ids
    std::vector<std::string> P;
    std::vector<std::uint64_t> label_values;  // sorted distinct labels

    explicit Workspace(const TauStructure& src) : s(&src), ix(src) {
        at.resize(src.L.size());
        for (std::size_t i = 0; i < src.L.size(); ++i) at[i] = ix.nodes_at(static_cast<int>(i));
        P = src.P;
        for (const auto& n : src.V)
            if (n.label) label_values.push_back(*n.label);
        std::sort(label_values.begin(), label_values.end());
        label_values.erase(std::unique(label_values.begin(), label_values.end()),
                           label_values.end());
    }

    std::size_t label_rank(std::uint64_t l) const {
        return std::lower_bound(label_values.begin(), label_values.end(), l) -
               label_values.begin();
    }
};

// Encoding of the structure under a candidate ordering; lexicographically
// minimized over the residual permutations.
std::string encode(const Workspace& w, const Perm& perm) {
    const TauStructure& s = *w.s;
    std::map<std::string, std::pair<std::size_t, std::size_t>> node_pos;  // id -> (level, rank)
    for (std::size_t lv = 0; lv < w.at.size(); ++lv)
        for (std::size_t r = 0; r < perm.nodes[lv].size(); ++r)
            node_pos[w.at[lv][perm.nodes[lv][r]]] = {lv, r};
    std::map<std::string, std::size_t> p_rank;
    for (std::size_t r = 0; r < perm.p.size(); ++r) p_rank[w.P[perm.p[r]]] = r;

    auto label_rank = [&](std::uint64_t l) { return w.label_rank(l); };

    std::ostringstream os;
    os << s.P.size() << ";" << mode_name(s.mode) << ";";
    for (const auto& le : s.L) os << level_kind_name(le.kind)[0];
    os << ";";
    for (std::size_t lv = 0; lv < w.at.size(); ++lv) {
        os << "|";
        for (std::size_t r = 0; r < perm.nodes[lv].size(); ++r) {
            const std::string& id = w.at[lv][perm.nodes[lv][r]];
            os << "[";
            const auto& n = w.ix.node(id);
            if (n.label) os << "l" << label_rank(*n.label);
            for (const auto& y : w.ix.preds(id)) {
                auto [plv, pr] = node_pos.at(y);
                os << "(" << plv << "," << pr << ")";
            }
            os << "]";
        }
    }
    os << ";F";
    for (std::size_t lv = 0; lv < s.L.size(); ++lv) {
        auto it = s.F.find(s.L[lv].id);
        if (it == s.F.end()) continue;
        os << "|" << lv << ":";
        std::vector<std::pair<std::size_t, int>> vals;
        for (const auto& [p, b] : it->second)
            vals.push_back({p_rank.at(p), w.ix.level_position(b)});
        std::sort(vals.begin(), vals.end());
        for (auto [pr, bp] : vals) os << pr << ">" << bp << ",";
    }
    os << ";G";
    for (std::size_t lv = 0; lv < s.L.size(); ++lv) {
        auto it = s.G.find(s.L[lv].id);
        if (it == s.G.end()) continue;
        os << "|" << lv << ":";
        std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> vals;
        for (const auto& [p, v] : it->second) vals.push_back({p_rank.at(p), node_pos.at(v)});
        std::sort(vals.begin(), vals.end());
        for (auto& [pr, np] : vals) os << pr << ">" << np.first << "," << np.second << ";";
    }
    if (s.prec) {
        os << ";prec";
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> ps;
        for (const auto& [a, b] : *s.prec) ps.push_back({node_pos.at(a), node_pos.at(b)});
        std::sort(ps.begin(), ps.end());
        for (auto& [a, b] : ps)
            os << "(" << a.first << "," << a.second << ">" << b.first << "," << b.second << ")";
    }
    if (s.H) {
        os << ";H";
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::string>> hs;
        for (const auto& [y, fn] : *s.H) {
            std::ostringstream inner;
            std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> vals;
            for (const auto& [lvl, v] : fn)
                vals.push_back({w.ix.level_position(lvl), node_pos.at(v)});
            std::sort(vals.begin(), vals.end());
            for (auto& [lp, np] : vals) inner << lp << ">" << np.first << "," << np.second << ";";
            hs.push_back({node_pos.at(y), inner.str()});
        }
        std::sort(hs.begin(), hs.end());
        for (auto& [y, body] : hs) os << "[" << y.first << "," << y.second << ":" << body << "]";
    }
    return os.str();
}

// Refinement colors: nodes by (label order, predecessor colors, successor
// colors, G-preimage profile); urelements by their F/G columns.
void refine(const Workspace& w, std::vector<std::map<std::string, std::string>>& node_color,
            std::map<std::string, std::string>& p_color) {
    const TauStructure& s = *w.s;
    for (int round = 0; round < 4; ++round) {
        std::map<std::string, std::string> np;
        for (std::size_t lv = 0; lv < w.at.size(); ++lv)
            for (const auto& id : w.at[lv]) {
                std::ostringstream os;
                const auto& n = w.ix.node(id);
                os << lv << "/";
                if (n.label) os << "L" << std::setw(6) << std::setfill('0') << w.label_rank(*n.label);
                std::vector<std::string> pc;
                for (const auto& y : w.ix.preds(id)) pc.push_back(node_color[0].at(y));
                os << "{";
                for (auto& c : pc) os << c << ",";
                os << "}{";
                std::vector<std::string> sc;
                for (const auto& m : s.V)
                    if (w.ix.t_related(id, m.id)) sc.push_back(node_color[0].at(m.id));
                std::sort(sc.begin(), sc.end());
                for (auto& c : sc) os << c << ",";
                os << "}{";
                std::vector<std::string> gc;
                for (const auto& [lvl, fn] : s.G)
                    for (const auto& [p, v] : fn)
                        if (v == id)
                            gc.push_back(std::to_string(w.ix.level_position(lvl)) + "=" +
                                         p_color.at(p));
                std::sort(gc.begin(), gc.end());
                for (auto& c : gc) os << c << ",";
                os << "}";
                np[id] = os.str();
            }
        std::map<std::string, std::string> pp;
        for (const auto& p : w.P) {
            std::ostringstream os;
            for (const auto& le : s.L) {
                auto itf = s.F.find(le.id);
                if (itf != s.F.end()) {
                    auto it = itf->second.find(p);
                    os << "F" << (it == itf->second.end() ? -2 : w.ix.level_position(it->second))
                       << ",";
                }
                auto itg = s.G.find(le.id);
                if (itg != s.G.end()) {
                    auto it = itg->second.find(p);
                    os << "G" << (it == itg->second.end() ? std::string("-") : node_color[0].at(it->second))
                       << ",";
                }
            }
            pp[p] = os.str();
        }
        if (np == node_color[0] && pp == p_color) break;
        node_color[0] = std::move(np);
        p_color = std::move(pp);
    }
}

void permutations_within_classes(const std::vector<std::string>& keys,
                                 std::vector<std::vector<std::size_t>>& out) {
    // orders = all permutations of indices whose key sequence is sorted
    std::vector<std::size_t> idx(keys.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
    });
    out.clear();
    out.push_back(idx);
    // expand ties
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && keys[idx[j]] == keys[idx[i]]) ++j;
        if (j - i > 1) {
            std::vector<std::vector<std::size_t>> grown;
            std::vector<std::size_t> block(idx.begin() + i, idx.begin() + j);
            std::sort(block.begin(), block.end());
            do {
                for (const auto& base : out) {
                    auto copy = base;
                    std::copy(block.begin(), block.end(), copy.begin() + i);
                    grown.push_back(copy);
                }
            } while (std::next_permutation(block.begin(), block.end()));
            out = std::move(grown);
        }
        i = j;
    }
}

}  // namespace

TauStructure canonical_form(const TauStructure& s) {
    Workspace w(s);
    std::vector<std::map<std::string, std::string>> node_color(1);
    std::map<std::string, std::string> p_color;
    for (const auto& n : s.V) node_color[0][n.id] = "";
    for (const auto& p : s.P) p_color[p] = "";
    refine(w, node_color, p_color);

    std::vector<std::vector<std::vector<std::size_t>>> level_orders(w.at.size());
    std::size_t combos = 1;
    for (std::size_t lv = 0; lv < w.at.size(); ++lv) {
        std::vector<std::string> keys;
        for (const auto& id : w.at[lv]) keys.push_back(node_color[0].at(id));
        permutations_within_classes(keys, level_orders[lv]);
        combos *= level_orders[lv].size();
    }
    std::vector<std::vector<std::size_t>> p_orders;
    {
        std::vector<std::string> keys;
        for (const auto& p : w.P) keys.push_back(p_color.at(p));
        permutations_within_classes(keys, p_orders);
        combos *= p_orders.size();
    }
    if (combos > 2'000'000)
        throw Error(ErrorCode::TooLarge, "canonicalization symmetry class too large");

    std::string best;
    Perm best_perm;
    std::vector<std::size_t> pick(w.at.size(), 0);
    for (std::size_t pi = 0; pi < p_orders.size(); ++pi) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            Perm perm;
            perm.p = p_orders[pi];
            perm.nodes.resize(w.at.size());
            for (std::size_t lv = 0; lv < w.at.size(); ++lv)
                perm.nodes[lv] = level_orders[lv][pick[lv]];
            std::string enc = encode(w, perm);
            if (best.empty() || enc < best) {
                best = enc;
                best_perm = perm;
            }
            std::size_t lv = 0;
            while (lv < pick.size() && ++pick[lv] == level_orders[lv].size()) pick[lv++] = 0;
            if (lv == pick.size()) break;
        }
    }

    // rebuild under best_perm
    const TauStructure& src = s;
    TauStructure out;
    out.mode = src.mode;
    std::map<std::string, std::string> level_name, node_name, p_name;
    for (std::size_t i = 0; i < src.L.size(); ++i) level_name[src.L[i].id] = "l" + std::to_string(i);
    for (std::size_t i = 0; i < src.L.size(); ++i) {
        LevelElem le;
        le.id = level_name[src.L[i].id];
        le.kind = src.L[i].kind;
        if (le.kind == LevelKind::Successor) le.succ_of = level_name[src.L[i].succ_of];
        out.L.push_back(le);
    }
    for (std::size_t r = 0; r < best_perm.p.size(); ++r) p_name[w.P[best_perm.p[r]]] = "p" + std::to_string(r);
    for (const auto& p : src.P) out.P.push_back(p_name[p]);
    std::sort(out.P.begin(), out.P.end());

    std::vector<std::uint64_t> labels;
    for (const auto& n : src.V)
        if (n.label) labels.push_back(*n.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    for (std::size_t lv = 0; lv < w.at.size(); ++lv)
        for (std::size_t r = 0; r < best_perm.nodes[lv].size(); ++r)
            node_name[w.at[lv][best_perm.nodes[lv][r]]] =
                "n" + std::to_string(lv) + "_" + std::to_string(r);
    for (const auto& n : src.V) {
        Node m;
        m.id = node_name[n.id];
        m.level = level_name[n.level];
        if (n.label)
            m.label = static_cast<std::uint64_t>(
                std::lower_bound(labels.begin(), labels.end(), *n.label) - labels.begin());
        out.V.push_back(m);
    }
    std::sort(out.V.begin(), out.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (const auto& [x, y] : src.T) out.T.push_back({node_name[x], node_name[y]});
    std::sort(out.T.begin(), out.T.end());
    for (const auto& [lvl, fn] : src.F) {
        auto& dst = out.F[level_name[lvl]];
        for (const auto& [p, b] : fn) dst[p_name[p]] = level_name[b];
    }
    for (const auto& [lvl, fn] : src.G) {
        auto& dst = out.G[level_name[lvl]];
        for (const auto& [p, v] : fn) dst[p_name[p]] = node_name[v];
    }
    if (src.prec) {
        PairList pl;
        for (const auto& [a, b] : *src.prec) pl.push_back({node_name[a], node_name[b]});
        std::sort(pl.begin(), pl.end());
        out.prec = pl;
    }
    if (src.H) {
        WitnessFamily h;
        for (const auto& [y, fn] : *src.H) {
            auto& dst = h[node_name[y]];
            for (const auto& [lvl, v] : fn) dst[level_name[lvl]] = node_name[v];
        }
        out.H = h;
    }
    return out;
}

std::string canonical_key(const TauStructure& s) {
    TauStructure c = canonical_form(s);
    std::ostringstream os;
    os << c.P.size() << "#" << mode_name(c.mode) << "#";
    for (const auto& le : c.L) os << level_kind_name(le.kind)[0];
    os << "#";
    for (const auto& n : c.V) {
        os << n.id << "@" << n.level;
        if (n.label) os << "!" << *n.label;
        os << ",";
    }
    os << "#";
    for (const auto& [x, y] : c.T) os << x << "<" << y << ",";
    os << "#F";
    for (const auto& [lvl, fn] : c.F) {
        os << "|" << lvl << ":";
        for (const auto& [p, b] : fn) os << p << ">" << b << ",";
    }
    os << "#G";
    for (const auto& [lvl, fn] : c.G) {
        os << "|" << lvl << ":";
        for (const auto& [p, v] : fn) os << p << ">" << v << ",";
    }
    if (c.prec) {
        os << "#prec";
        for (const auto& [x, y] : *c.prec) os << x << "<" << y << ",";
    }
    if (c.H) {
        os << "#H";
        for (const auto& [y, fn] : *c.H) {
            os << "|" << y << ":";
            for (const auto& [lvl, v] : fn) os << lvl << ">" << v << ",";
        }
    }
    return os.str();
}

}  // namespace kurepa
