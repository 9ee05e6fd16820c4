#include "kurepa/forcing.hpp"

#include <algorithm>

#include "kurepa/json_io.hpp"

namespace kurepa {

using nlohmann::json;

void validate_condition(const KurepaCondition& p, std::size_t width) {
    validate_tree_shape(p.tree);
    if (p.tree.empty())
        throw Error(ErrorCode::MalformedDocument, "condition tree must have height >= 1");
    for (std::size_t j = 1; j < p.tree.levels.size(); ++j)
        for (const auto& id : p.tree.levels[j])
            if (!p.tree.parent.count(id))
                throw Error(ErrorCode::MalformedDocument,
                            "condition node '" + id + "' has no parent");
    if (!is_pruned(p.tree))
        throw Error(ErrorCode::MalformedDocument, "condition tree must be pruned");
    for (const auto& lv : p.tree.levels)
        if (lv.size() > width)
            throw Error(ErrorCode::WidthExceeded, "condition level wider than the bound");
    std::set<std::string> top(p.tree.levels.back().begin(), p.tree.levels.back().end());
    std::set<std::string> ran;
    for (const auto& [idx, v] : p.f) {
        (void)idx;
        if (!top.count(v))
            throw Error(ErrorCode::MalformedDocument, "f maps outside the top level");
        ran.insert(v);
    }
    if (ran != top)
        throw Error(ErrorCode::MalformedDocument, "f must map onto the whole top level");
}

namespace {

bool tree_initial_segment(const PrunedTree& prefix, const PrunedTree& whole) {
    if (prefix.height() > whole.height()) return false;
    for (std::size_t j = 0; j < prefix.height(); ++j)
        if (prefix.levels[j] != whole.levels[j]) return false;
    for (std::size_t j = 1; j < prefix.height(); ++j)
        for (const auto& id : prefix.levels[j])
            if (prefix.parent.at(id) != whole.parent.at(id)) return false;
    return true;
}

bool strictly_below(const PrunedTree& t, const std::string& anc, const std::string& node) {
    std::string cur = node;
    while (t.parent.count(cur)) {
        cur = t.parent.at(cur);
        if (cur == anc) return true;
    }
    return false;
}

}  // namespace

bool leq(const KurepaCondition& q, const KurepaCondition& p) {
    if (!tree_initial_segment(p.tree, q.tree)) return false;
    for (const auto& [idx, v] : p.f) {
        auto it = q.f.find(idx);
        if (it == q.f.end()) return false;
        if (p.tree.height() == q.tree.height()) {
            if (it->second != v) return false;
        } else {
            if (!strictly_below(q.tree, v, it->second)) return false;
        }
    }
    return true;
}

bool meets(const KurepaCondition& p, const DenseRequest& d) {
    if (const auto* h = std::get_if<HeightAtLeast>(&d)) return p.tree.height() >= h->height;
    if (const auto* i = std::get_if<IndexInDomain>(&d)) return p.f.count(i->index) > 0;
    const auto& s = std::get<Split>(d);
    auto a = p.f.find(s.first), b = p.f.find(s.second);
    return a != p.f.end() && b != p.f.end() && a->second != b->second;
}

namespace {

// One level of growth. split_image, when set, receives two children; every
// other top node gets one. Branch indices listed in split_movers move to the
// second child, everything else follows its image's first child.
KurepaCondition grow_level(const KurepaCondition& p, const std::string& split_image,
                           const std::set<std::int64_t>& split_movers, std::size_t width) {
    const auto& top = p.tree.levels.back();
    std::size_t new_width = top.size() + (split_image.empty() ? 0 : 1);
    if (new_width > width)
        throw Error(ErrorCode::WidthExceeded,
                    "split needs level width " + std::to_string(new_width) + " > " +
                        std::to_string(width));
    KurepaCondition q = p;
    std::size_t lvl = q.tree.height();
    std::vector<std::string> fresh;
    std::map<std::string, std::string> first_child, second_child;
    std::size_t k = 0;
    for (const auto& v : top) {
        std::string c0 = "n" + std::to_string(lvl) + "x" + std::to_string(k++);
        fresh.push_back(c0);
        q.tree.parent[c0] = v;
        first_child[v] = c0;
        if (v == split_image) {
            std::string c1 = "n" + std::to_string(lvl) + "x" + std::to_string(k++);
            fresh.push_back(c1);
            q.tree.parent[c1] = v;
            second_child[v] = c1;
        }
    }
    std::sort(fresh.begin(), fresh.end());
    q.tree.levels.push_back(fresh);
    for (auto& [idx, v] : q.f)
        v = split_movers.count(idx) ? second_child.at(v) : first_child.at(v);
    return q;
}

std::string lowest_top(const KurepaCondition& p) { return p.tree.levels.back().front(); }

}  // namespace

KurepaCondition trivial_condition() {
    KurepaCondition p;
    p.tree.levels.push_back({"n0x0"});
    p.f[0] = "n0x0";
    return p;
}

KurepaCondition extend_to_meet(const KurepaCondition& p, const DenseRequest& d, std::size_t width) {
    if (meets(p, d)) return p;
    if (const auto* h = std::get_if<HeightAtLeast>(&d)) {
        KurepaCondition q = p;
        while (q.tree.height() < h->height) q = grow_level(q, "", {}, width);
        return q;
    }
    if (const auto* i = std::get_if<IndexInDomain>(&d)) {
        KurepaCondition q = p;
        q.f[i->index] = lowest_top(q);
        return q;
    }
    const auto& s = std::get<Split>(d);
    if (s.first == s.second)
        throw Error(ErrorCode::PreconditionFailed, "split needs two distinct indices");
    KurepaCondition q = p;
    auto ensure = [&](std::int64_t idx, std::int64_t other) {
        if (q.f.count(idx)) return;
        auto o = q.f.find(other);
        if (o != q.f.end()) {
            for (const auto& v : q.tree.levels.back())
                if (v != o->second) {
                    q.f[idx] = v;
                    return;
                }
        }
        q.f[idx] = lowest_top(q);
    };
    ensure(std::min(s.first, s.second), std::max(s.first, s.second));
    ensure(std::max(s.first, s.second), std::min(s.first, s.second));
    if (q.f.at(s.first) != q.f.at(s.second)) return q;
    return grow_level(q, q.f.at(s.first), {std::max(s.first, s.second)}, width);
}

GenericRun run_generic(const std::vector<DenseRequest>& requests, std::size_t width,
                       std::uint64_t seed) {
    if (width == 0) throw Error(ErrorCode::WidthExceeded, "width bound must be positive");
    GenericRun run;
    run.width = width;
    run.seed = seed;
    run.requests = requests;
    KurepaCondition cur = trivial_condition();
    run.trace.push_back(cur);
    for (std::size_t i = 0; i < requests.size(); ++i) {
        try {
            cur = extend_to_meet(cur, requests[i], width);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::WidthExceeded)
                throw Error(ErrorCode::WidthExceeded,
                            "request #" + std::to_string(i) + ": " + e.what());
            throw;
        }
        run.trace.push_back(cur);
    }
    run.final_tree = cur.tree;
    for (const auto& [idx, v] : cur.f) {
        std::vector<std::string> chain{v};
        std::string node = v;
        while (cur.tree.parent.count(node)) {
            node = cur.tree.parent.at(node);
            chain.push_back(node);
        }
        std::reverse(chain.begin(), chain.end());
        run.branches[idx] = chain;
    }
    return run;
}

KurepaCondition restrict_to_suborder(const KurepaCondition& p, const std::set<std::int64_t>& idx) {
    KurepaCondition q;
    q.tree = p.tree;
    for (const auto& [delta, v] : p.f) {
        if (delta < 0) {
            q.f[delta] = v;
            continue;
        }
        if (idx.count(delta))
            q.f[delta] = v;
        else
            q.f[-delta - 1] = v;
    }
    return q;
}

bool cohen_compatible(const CohenCondition& a, const CohenCondition& b) {
    for (const auto& [key, bit] : a.entries) {
        auto it = b.entries.find(key);
        if (it != b.entries.end() && it->second != bit) return false;
    }
    return true;
}

CohenRestriction cohen_support_and_restrict(const std::vector<CohenCondition>& conds,
                                            const std::vector<CohenCondition>& filter) {
    std::set<CohenCondition> fset(filter.begin(), filter.end());
    for (std::size_t i = 0; i < filter.size(); ++i)
        for (std::size_t j = i + 1; j < filter.size(); ++j)
            if (!cohen_compatible(filter[i], filter[j]))
                throw Error(ErrorCode::NotAFilter, "filter members are incompatible");
    for (const auto& g : filter)
        for (const auto& [key, bit] : g.entries) {
            CohenCondition h = g;
            h.entries.erase(key);
            (void)bit;
            if (!fset.count(h))
                throw Error(ErrorCode::NotAFilter, "filter is not closed under weakening");
        }
    for (const auto& p : conds)
        if (!fset.count(p))
            throw Error(ErrorCode::NotAFilter, "conditions must come from the filter");

    CohenRestriction out;
    for (const auto& p : conds)
        for (const auto& [key, bit] : p.entries) {
            (void)bit;
            out.dstar.insert(key);
            out.d.insert(key.first);
        }
    std::set<CohenCondition> restricted;
    for (const auto& g : filter) {
        CohenCondition h;
        for (const auto& [key, bit] : g.entries)
            if (out.d.count(key.first)) h.entries[key] = bit;
        restricted.insert(h);
    }
    out.restricted.assign(restricted.begin(), restricted.end());
    return out;
}

json condition_to_json(const KurepaCondition& p) {
    json j;
    j["tree"] = tree_to_json(p.tree);
    json f = json::array();
    for (const auto& [idx, v] : p.f) f.push_back(json::array({idx, v}));
    j["f"] = f;
    return j;
}

KurepaCondition condition_from_json(const json& j) {
    if (!j.is_object() || !j.contains("tree") || !j.contains("f"))
        throw Error(ErrorCode::MalformedDocument, "condition needs 'tree' and 'f'");
    KurepaCondition p;
    p.tree = tree_from_json(j["tree"]);
    for (const auto& e : j["f"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_string())
            throw Error(ErrorCode::MalformedDocument, "f entries must be [index, node]");
        p.f[e[0].get<std::int64_t>()] = e[1].get<std::string>();
    }
    return p;
}

json request_to_json(const DenseRequest& d) {
    json j;
    if (const auto* h = std::get_if<HeightAtLeast>(&d)) {
        j["type"] = "height-at-least";
        j["height"] = h->height;
    } else if (const auto* i = std::get_if<IndexInDomain>(&d)) {
        j["type"] = "index-in-domain";
        j["index"] = i->index;
    } else {
        const auto& s = std::get<Split>(d);
        j["type"] = "split";
        j["first"] = s.first;
        j["second"] = s.second;
    }
    return j;
}

DenseRequest request_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "height-at-least") return HeightAtLeast{j.at("height").get<std::size_t>()};
    if (type == "index-in-domain") return IndexInDomain{j.at("index").get<std::int64_t>()};
    if (type == "split") return Split{j.at("first").get<std::int64_t>(), j.at("second").get<std::int64_t>()};
    throw Error(ErrorCode::MalformedDocument, "unknown request type '" + type + "'");
}

json run_to_json(const GenericRun& r) {
    json j;
    j["width"] = r.width;
    j["seed"] = r.seed;
    json reqs = json::array();
    for (const auto& d : r.requests) reqs.push_back(request_to_json(d));
    j["requests"] = reqs;
    json trace = json::array();
    for (const auto& p : r.trace) trace.push_back(condition_to_json(p));
    j["trace"] = trace;
    j["final_tree"] = tree_to_json(r.final_tree);
    json branches = json::array();
    for (const auto& [idx, chain] : r.branches) branches.push_back(json::array({idx, chain}));
    j["branches"] = branches;
    return j;
}

GenericRun run_from_json(const json& j) {
    GenericRun r;
    r.width = j.at("width").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("requests")) r.requests.push_back(request_from_json(e));
    for (const auto& e : j.at("trace")) r.trace.push_back(condition_from_json(e));
    r.final_tree = tree_from_json(j.at("final_tree"));
    for (const auto& e : j.at("branches")) {
        std::vector<std::string> chain;
        for (const auto& v : e.at(1)) chain.push_back(v.get<std::string>());
        r.branches[e.at(0).get<std::int64_t>()] = chain;
    }
    return r;
}

json cohen_to_json(const CohenCondition& c) {
    json entries = json::array();
    for (const auto& [key, bit] : c.entries)
        entries.push_back(json::array({key.first, key.second, bit ? 1 : 0}));
    json j;
    j["entries"] = entries;
    return j;
}

CohenCondition cohen_from_json(const json& j) {
    CohenCondition c;
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3)
            throw Error(ErrorCode::MalformedDocument, "cohen entries must be [i, k, bit]");
        std::uint64_t bit = e[2].get<std::uint64_t>();
        if (bit > 1) throw Error(ErrorCode::MalformedDocument, "cohen values are bits");
        c.entries[{e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>()}] = bit == 1;
    }
    return c;
}

}  // namespace kurepa
