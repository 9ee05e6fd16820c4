#include "kurepa/checker.hpp"

#include <algorithm>

namespace kurepa {

const char* sentence_name(SentenceId s) {
    switch (s) {
        case SentenceId::Sigma: return "sigma";
        case SentenceId::SigmaPrime: return "sigma-prime";
        case SentenceId::Psi: return "psi";
    }
    return "?";
}

std::optional<SentenceId> sentence_from_name(const std::string& name) {
    if (name == "sigma") return SentenceId::Sigma;
    if (name == "sigma-prime" || name == "sigma_prime") return SentenceId::SigmaPrime;
    if (name == "psi") return SentenceId::Psi;
    return std::nullopt;
}

namespace {

class Collector {
public:
    void add(std::string tag, std::vector<std::string> witnesses, std::string message) {
        violations_.push_back({std::move(tag), std::move(witnesses), std::move(message)});
    }
    Verdict finish() {
        Verdict v;
        v.violations = std::move(violations_);
        v.ok = v.violations.empty();
        return v;
    }

private:
    std::vector<Violation> violations_;
};

void check_level_order(const TauStructure& s, Collector& out) {
    const auto& L = s.L;
    if (L.empty()) {
        out.add("L-zero", {}, "L is empty; no minimum element");
        return;
    }
    std::vector<std::string> zeros, maxes;
    for (const auto& le : L) {
        if (le.kind == LevelKind::Zero) zeros.push_back(le.id);
        if (le.kind == LevelKind::Max) maxes.push_back(le.id);
    }
    if (zeros.size() != 1 || L.front().kind != LevelKind::Zero)
        out.add("L-zero", zeros, "exactly the least level element must be tagged zero");
    if (L.size() >= 2) {
        if (maxes.size() != 1 || L.back().kind != LevelKind::Max)
            out.add("L-max", maxes, "exactly the greatest level element must be tagged max");
        if (L.back().kind == LevelKind::Successor)
            out.add("L-max", {L.back().id}, "the maximum element may not be a successor");
    } else if (!maxes.empty()) {
        out.add("L-max", maxes, "a single materialized level carries no max tag");
    }
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (L[i].kind != LevelKind::Successor) continue;
        if (i == 0)
            out.add("L-succ-witness", {L[i].id}, "successor tag on the least element");
        else if (L[i].succ_of != L[i - 1].id)
            out.add("L-succ-witness", {L[i].id, L[i].succ_of},
                    "successor witness must name the immediate materialized predecessor");
    }
}

void check_labels(const TauStructure& s, const StructureIndex& ix, Collector& out) {
    std::map<std::uint64_t, std::vector<std::string>> by_label;
    for (const auto& n : s.V) {
        if (!n.label) continue;
        if (ix.level_position(n.level) != ix.branch_level_pos() || ix.branch_level_pos() < 0)
            out.add("label-placement", {n.id}, "branch label on a non-branch-level node");
        by_label[*n.label].push_back(n.id);
    }
    for (auto& [lab, ids] : by_label)
        if (ids.size() > 1) {
            std::sort(ids.begin(), ids.end());
            out.add("label-distinct", ids, "branch label " + std::to_string(lab) + " reused");
        }
}

void check_tree_order(const TauStructure& s, const StructureIndex& ix, Collector& out) {
    for (const auto& [x, y] : s.T)
        if (ix.node_level_position(x) >= ix.node_level_position(y))
            out.add("T-level", {x, y}, "tree order must go strictly upward in level");
    for (const auto& [x, y] : s.T)
        for (const auto& n : s.V)
            if (ix.t_related(y, n.id) && !ix.t_related(x, n.id)) {
                out.add("T-transitive", {x, y, n.id}, "tree order not transitive");
            }
    for (const auto& n : s.V) {
        const auto& pr = ix.preds(n.id);
        for (std::size_t i = 0; i < pr.size(); ++i)
            for (std::size_t j = i + 1; j < pr.size(); ++j)
                if (!ix.t_related(pr[i], pr[j]) && !ix.t_related(pr[j], pr[i]))
                    out.add("T-chain", {pr[i], pr[j], n.id},
                            "predecessors of a node must be pairwise comparable");
    }
}

bool limit_unique_applies(const TauStructure& s, std::size_t pos) {
    // A limit for uniqueness purposes: neither a successor nor the least
    // element. The greatest element counts when more than one level is
    // materialized, unless it is explicitly successor-tagged.
    if (pos == 0) return false;
    LevelKind k = s.L[pos].kind;
    return k == LevelKind::Limit || k == LevelKind::Max;
}

void check_limit_unique(const TauStructure& s, const StructureIndex& ix, Mode mode, Collector& out) {
    for (std::size_t pos = 0; pos < s.L.size(); ++pos) {
        if (!limit_unique_applies(s, pos)) continue;
        const auto& nodes = ix.nodes_at(static_cast<int>(pos));
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                if (ix.preds(nodes[i]) != ix.preds(nodes[j])) continue;
                if (mode == Mode::Surrogate) {
                    const auto& a = ix.node(nodes[i]).label;
                    const auto& b = ix.node(nodes[j]).label;
                    if (a && b && *a != *b) continue;
                }
                out.add("limit-unique", {nodes[i], nodes[j]},
                        "distinct nodes at a limit level share their predecessors");
            }
    }
}

void check_branch_maximal(const TauStructure& s, const StructureIndex& ix, Collector& out) {
    (void)s;
    for (const auto& x : ix.branch_nodes())
        for (const auto& w : ix.interior_nodes()) {
            if (ix.t_related(w, x)) continue;
            bool above_all = true;
            for (const auto& y : ix.interior_nodes())
                if (ix.t_related(y, x) && !ix.t_related(y, w)) {
                    above_all = false;
                    break;
                }
            if (above_all) {
                out.add("branch-maximal", {x, w},
                        "branch chain is extendable by an interior node");
                break;
            }
        }
}

void check_witness_family(const TauStructure& s, const StructureIndex& ix, bool is_g, Collector& out) {
    const WitnessFamily& fam = is_g ? s.G : s.F;
    const std::string name = is_g ? "G" : "F";
    int last = static_cast<int>(s.L.size()) - 1;
    for (const auto& [lvl, fn] : fam) {
        (void)fn;
        if (ix.level_position(lvl) == last)
            out.add(name + "-domain", {lvl}, name + " defined at the maximum element");
    }
    for (int pos = 0; pos < last; ++pos) {
        const std::string& lvl = s.L[pos].id;
        auto it = fam.find(lvl);
        const std::map<std::string, std::string>* fn = it == fam.end() ? nullptr : &it->second;
        for (const auto& p : s.P)
            if (!fn || !fn->count(p))
                out.add(name + "-total", {lvl, p}, name + " undefined at (" + lvl + "," + p + ")");
        if (!fn) continue;
        if (!is_g) {
            for (const auto& [p, b] : *fn)
                if (ix.level_position(b) > pos)
                    out.add("F-bound", {lvl, p, b}, "F value above its level");
            for (int bp = 0; bp <= pos; ++bp) {
                const std::string& b = s.L[bp].id;
                bool hit = false;
                for (const auto& [p, val] : *fn)
                    if (val == b) {
                        hit = true;
                        break;
                    }
                if (!hit)
                    out.add("F-surjective", {lvl, b},
                            "F misses '" + b + "' below level '" + lvl + "'");
            }
        } else {
            for (const auto& [p, v] : *fn)
                if (ix.node_level_position(v) != pos)
                    out.add("G-level", {lvl, p, v}, "G value off its level");
            for (const auto& v : ix.nodes_at(pos)) {
                bool hit = false;
                for (const auto& [p, val] : *fn)
                    if (val == v) {
                        hit = true;
                        break;
                    }
                if (!hit)
                    out.add("G-surjective", {lvl, v}, "G misses node '" + v + "' at its level");
            }
        }
    }
}

void check_prec_and_h(const TauStructure& s, const StructureIndex& ix, Collector& out) {
    const auto& vm = ix.branch_nodes();
    std::set<std::string> vm_set(vm.begin(), vm.end());
    const PairList& prec = *s.prec;
    std::set<std::pair<std::string, std::string>> ps(prec.begin(), prec.end());
    auto in_vm = [&](const std::string& x) { return vm_set.count(x) > 0; };

    for (const auto& [x, y] : prec)
        if (!in_vm(x) || !in_vm(y))
            out.add("prec-linear", {x, y}, "prec relates non-branch nodes");
    for (const auto& x : vm)
        if (ps.count({x, x})) out.add("prec-linear", {x}, "prec is not irreflexive");
    for (std::size_t i = 0; i < vm.size(); ++i)
        for (std::size_t j = i + 1; j < vm.size(); ++j) {
            bool xy = ps.count({vm[i], vm[j]}) > 0, yx = ps.count({vm[j], vm[i]}) > 0;
            if (xy && yx) out.add("prec-linear", {vm[i], vm[j]}, "prec is not antisymmetric");
            if (!xy && !yx) out.add("prec-linear", {vm[i], vm[j]}, "prec is not total");
        }
    for (const auto& [x, y] : prec)
        for (const auto& z : vm)
            if (ps.count({y, z}) && !ps.count({x, z}) && in_vm(x) && in_vm(y))
                out.add("prec-linear", {x, y, z}, "prec is not transitive");

    for (const auto& x : vm) {
        bool is_max = true;
        for (const auto& y : vm)
            if (y != x && !ps.count({y, x})) {
                is_max = false;
                break;
            }
        if (is_max && !vm.empty())
            out.add("prec-no-max", {x}, "prec has a maximum element");
    }

    const WitnessFamily& H = *s.H;
    for (const auto& [y, fn] : H) {
        (void)fn;
        if (!in_vm(y)) out.add("H-domain", {y}, "H keyed by a non-branch node");
    }
    for (const auto& y : vm) {
        auto it = H.find(y);
        const std::map<std::string, std::string>* fn = it == H.end() ? nullptr : &it->second;
        for (const auto& le : s.L)
            if (!fn || !fn->count(le.id))
                out.add("H-total", {y, le.id}, "H undefined at (" + y + "," + le.id + ")");
        if (!fn) continue;
        auto below = [&](const std::string& x) { return x == y || ps.count({x, y}) > 0; };
        for (const auto& [lvl, x] : *fn)
            if (!in_vm(x) || !below(x))
                out.add("H-bound", {y, lvl, x}, "H value outside the initial segment");
        for (const auto& x : vm) {
            if (!below(x)) continue;
            bool hit = false;
            for (const auto& [lvl, val] : *fn)
                if (val == x) {
                    hit = true;
                    break;
                }
            if (!hit) out.add("H-surjective", {y, x}, "H misses '" + x + "' below '" + y + "'");
        }
    }
}

void check_pruned(const TauStructure& s, const StructureIndex& ix, Collector& out) {
    if (s.L.size() < 2) return;
    int top_interior = static_cast<int>(s.L.size()) - 2;
    for (const auto& x : ix.interior_nodes())
        if (!ix.has_interior_successor(x) && ix.node_level_position(x) != top_interior)
            out.add("pruned", {x}, "maximal interior chain stops short of the top level");
}

}  // namespace

Verdict check(const TauStructure& s, SentenceId which, const CheckOptions& opts) {
    StructureIndex ix(s);
    Mode mode = opts.mode_override.value_or(s.mode);
    if (which == SentenceId::Sigma && (!s.prec || !s.H))
        throw Error(ErrorCode::MissingComponent, "sigma requires prec and H");

    Collector out;
    check_level_order(s, out);
    check_labels(s, ix, out);
    check_tree_order(s, ix, out);
    check_limit_unique(s, ix, mode, out);
    check_branch_maximal(s, ix, out);
    check_witness_family(s, ix, false, out);
    check_witness_family(s, ix, true, out);
    if (which == SentenceId::Sigma) check_prec_and_h(s, ix, out);
    if (which == SentenceId::Psi) {
        std::size_t c = opts.declared_c.value_or(s.P.size());
        if (s.P.size() != c)
            out.add("P-countable", {},
                    "|P| = " + std::to_string(s.P.size()) + ", declared c = " + std::to_string(c));
    }
    if (opts.pruned_axiom) check_pruned(s, ix, out);
    return out.finish();
}

Classification classify(const TauStructure& s, const CheckOptions& opts) {
    Verdict v = check(s, SentenceId::Psi, opts);
    if (!v.ok)
        throw Error(ErrorCode::PreconditionFailed,
                    "classify requires a validated psi-model (" +
                        std::to_string(v.violations.size()) + " violations)");
    StructureIndex ix(s);
    std::size_t c = opts.declared_c.value_or(s.P.size());
    std::size_t interior_levels = s.L.size() >= 2 ? s.L.size() - 1 : 0;
    Classification cl;
    cl.l_kind = interior_levels == c ? LKind::LongL : LKind::ShortL;
    cl.kurepa_analog = cl.l_kind == LKind::LongL && ix.branch_nodes().size() > c;
    return cl;
}

}  // namespace kurepa
