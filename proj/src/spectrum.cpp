#include "kurepa/spectrum.hpp"

#include <algorithm>
#include <map>

#include "kurepa/canonical.hpp"
#include "kurepa/json_io.hpp"
#include "kurepa/morphisms.hpp"
#include "kurepa/parallel.hpp"

namespace kurepa {

namespace {

// all surjections [n] -> [k] as value vectors
void surjections_rec(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                     std::vector<bool>& hit, std::size_t hits,
                     std::vector<std::vector<std::size_t>>& out) {
    std::size_t i = cur.size();
    if (i == n) {
        if (hits == k) out.push_back(cur);
        return;
    }
    if (k - hits > n - i) return;  // cannot cover the rest
    for (std::size_t v = 0; v < k; ++v) {
        cur.push_back(v);
        bool fresh = !hit[v];
        if (fresh) {
            hit[v] = true;
            ++hits;
        }
        surjections_rec(n, k, cur, hit, hits, out);
        if (fresh) {
            hit[v] = false;
            --hits;
        }
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> surjections(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<std::size_t> cur;
    std::vector<bool> hit(k, false);
    surjections_rec(n, k, cur, hit, 0, out);
    return out;
}

void compositions_rec(std::size_t parts, std::size_t lo, std::size_t hi, std::size_t budget,
                      std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == parts) {
        out.push_back(cur);
        return;
    }
    std::size_t remaining = parts - cur.size();
    for (std::size_t w = lo; w <= hi; ++w) {
        if (w > budget || (remaining - 1) * lo > budget - w) break;
        cur.push_back(w);
        compositions_rec(parts, lo, hi, budget - w, cur, out);
        cur.pop_back();
    }
}

// width sequences: `parts` values in [lo, hi] with sum <= budget
std::vector<std::vector<std::size_t>> width_sequences(std::size_t parts, std::size_t lo,
                                                      std::size_t hi, std::size_t budget) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    compositions_rec(parts, lo, hi, budget, cur, out);
    return out;
}

struct Candidate {
    std::vector<std::size_t> widths;          // interior level widths
    std::vector<LevelKind> kinds;             // full kind sequence
    std::vector<int> pred_choice;             // per interior node: lower node index or -1
    std::vector<std::vector<int>> preds;      // resolved chains (node indices)
    std::vector<std::size_t> node_level;      // interior node -> level pos
    std::vector<std::vector<int>> chains;     // maximal chains (node indices)
    std::vector<std::pair<std::size_t, std::optional<std::uint64_t>>> branches;  // chain idx, label
};

TauStructure assemble(const Candidate& cand, std::size_t c, Mode mode,
                      const std::vector<std::vector<std::size_t>>& f_choice,
                      const std::vector<std::vector<std::size_t>>& g_choice) {
    TauStructure s;
    s.mode = mode;
    for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));
    std::size_t ell = cand.kinds.size();
    for (std::size_t i = 0; i < ell; ++i) {
        LevelElem le;
        le.id = "l" + std::to_string(i);
        le.kind = cand.kinds[i];
        if (le.kind == LevelKind::Successor) le.succ_of = "l" + std::to_string(i - 1);
        s.L.push_back(le);
    }
    std::vector<std::string> node_ids(cand.node_level.size());
    std::vector<std::size_t> index_within(cand.node_level.size());
    {
        std::map<std::size_t, std::size_t> seen;
        for (std::size_t i = 0; i < cand.node_level.size(); ++i) {
            index_within[i] = seen[cand.node_level[i]]++;
            node_ids[i] = "v" + std::to_string(cand.node_level[i]) + "_" +
                          std::to_string(index_within[i]);
            s.V.push_back({node_ids[i], "l" + std::to_string(cand.node_level[i]), {}});
        }
    }
    for (std::size_t i = 0; i < cand.preds.size(); ++i)
        for (int y : cand.preds[i]) s.T.push_back({node_ids[y], node_ids[i]});
    for (std::size_t b = 0; b < cand.branches.size(); ++b) {
        std::string bid = "b" + std::to_string(b);
        s.V.push_back({bid, s.L.back().id, cand.branches[b].second});
        for (int y : cand.chains[cand.branches[b].first]) s.T.push_back({node_ids[y], bid});
    }
    for (std::size_t a = 0; a + 1 < ell; ++a) {
        auto& f = s.F["l" + std::to_string(a)];
        auto& g = s.G["l" + std::to_string(a)];
        std::vector<int> level_nodes;
        for (std::size_t i = 0; i < cand.node_level.size(); ++i)
            if (cand.node_level[i] == a) level_nodes.push_back(static_cast<int>(i));
        for (std::size_t k = 0; k < c; ++k) {
            f[s.P[k]] = "l" + std::to_string(f_choice[a][k]);
            g[s.P[k]] = node_ids[level_nodes[g_choice[a][k]]];
        }
    }
    std::sort(s.V.begin(), s.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(s.T.begin(), s.T.end());
    return s;
}

void multisets_rec(std::size_t count, std::size_t from, std::size_t upto, bool strict,
                   std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == count) {
        out.push_back(cur);
        return;
    }
    for (std::size_t v = from; v < upto; ++v) {
        cur.push_back(v);
        multisets_rec(count, strict ? v + 1 : v, upto, strict, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<TauStructure> enumerate_models(std::size_t max_size, std::size_t c, Mode mode) {
    if (max_size > kEnumerationBound)
        throw Error(ErrorCode::TooLarge,
                    "enumeration is bounded at " + std::to_string(kEnumerationBound));
    std::map<std::string, TauStructure> reps;
    CheckOptions opts;
    opts.declared_c = c;

    auto offer = [&](const TauStructure& s) {
        if (!check(s, SentenceId::Psi, opts).ok) return;
        TauStructure canon = canonical_form(s);
        std::string key = dump_canonical(structure_to_json(canon));
        reps.emplace(std::move(key), std::move(canon));
    };

    if (c + 1 > max_size) return {};

    // single materialized level: no witnesses, no tree order, no branch level
    for (std::size_t w = 0; c + 1 + w <= max_size; ++w) {
        Candidate cand;
        cand.kinds = {LevelKind::Zero};
        for (std::size_t i = 0; i < w; ++i) {
            cand.node_level.push_back(0);
            cand.preds.push_back({});
            cand.pred_choice.push_back(-1);
        }
        offer(assemble(cand, c, mode, {}, {}));
    }

    for (std::size_t ell = 2; ell <= c + 1 && c + ell <= max_size; ++ell) {
        std::size_t room = max_size - c - ell;
        std::size_t interior_levels = ell - 1;
        if (room < interior_levels) continue;  // one node per interior level at least

        std::vector<std::vector<LevelKind>> kind_seqs;
        {
            std::size_t mid = ell >= 2 ? ell - 2 : 0;
            for (std::size_t bits = 0; bits < (std::size_t(1) << mid); ++bits) {
                std::vector<LevelKind> ks{LevelKind::Zero};
                for (std::size_t i = 0; i < mid; ++i)
                    ks.push_back((bits >> i) & 1 ? LevelKind::Limit : LevelKind::Successor);
                ks.push_back(LevelKind::Max);
                kind_seqs.push_back(ks);
            }
        }

        for (const auto& kinds : kind_seqs) {
            for (const auto& widths : width_sequences(interior_levels, 1, c, room)) {
                std::size_t interior_total = 0;
                for (auto w : widths) interior_total += w;
                std::size_t branch_room = room - interior_total;

                std::vector<std::size_t> node_level;
                for (std::size_t a = 0; a < widths.size(); ++a)
                    for (std::size_t k = 0; k < widths[a]; ++k) node_level.push_back(a);
                std::size_t n_nodes = node_level.size();

                // pred choices: -1 or any node at a strictly lower level
                std::vector<std::vector<int>> options(n_nodes);
                for (std::size_t i = 0; i < n_nodes; ++i) {
                    options[i].push_back(-1);
                    for (std::size_t j = 0; j < n_nodes; ++j)
                        if (node_level[j] < node_level[i]) options[i].push_back(static_cast<int>(j));
                }
                std::vector<std::size_t> pick(n_nodes, 0);
                while (true) {
                    Candidate cand;
                    cand.kinds = kinds;
                    cand.widths = widths;
                    cand.node_level = node_level;
                    cand.preds.resize(n_nodes);
                    bool ok = true;
                    for (std::size_t i = 0; i < n_nodes && ok; ++i) {
                        int ch = options[i][pick[i]];
                        cand.pred_choice.push_back(ch);
                        if (ch >= 0) {
                            cand.preds[i] = cand.preds[ch];
                            cand.preds[i].push_back(ch);
                        }
                    }
                    // interior limit levels need distinct predecessor chains
                    for (std::size_t a = 0; a < widths.size() && ok; ++a) {
                        if (kinds[a] != LevelKind::Limit) continue;
                        for (std::size_t i = 0; i < n_nodes && ok; ++i)
                            for (std::size_t j = i + 1; j < n_nodes; ++j)
                                if (node_level[i] == a && node_level[j] == a &&
                                    cand.preds[i] == cand.preds[j]) {
                                    ok = false;
                                    break;
                                }
                    }
                    if (ok) {
                        // maximal chains: closures of nodes without interior successors
                        std::vector<bool> has_succ(n_nodes, false);
                        for (std::size_t i = 0; i < n_nodes; ++i)
                            for (int y : cand.preds[i]) has_succ[y] = true;
                        for (std::size_t i = 0; i < n_nodes; ++i)
                            if (!has_succ[i]) {
                                auto chain = cand.preds[i];
                                chain.push_back(static_cast<int>(i));
                                cand.chains.push_back(chain);
                            }
                        std::sort(cand.chains.begin(), cand.chains.end());

                        // witness products
                        std::vector<std::vector<std::vector<std::size_t>>> f_opts, g_opts;
                        bool witness_ok = true;
                        for (std::size_t a = 0; a < widths.size(); ++a) {
                            f_opts.push_back(surjections(c, a + 1));
                            g_opts.push_back(surjections(c, widths[a]));
                            if (f_opts.back().empty() || g_opts.back().empty()) witness_ok = false;
                        }

                        std::size_t max_b =
                            mode == Mode::Literal
                                ? std::min(branch_room, cand.chains.size())
                                : branch_room;
                        for (std::size_t B = 0; witness_ok && B <= max_b; ++B) {
                            std::vector<std::vector<std::size_t>> assigns;
                            std::vector<std::size_t> cur;
                            multisets_rec(B, 0, cand.chains.size(), mode == Mode::Literal, cur,
                                          assigns);
                            for (const auto& assign : assigns) {
                                // label patterns; literal branches stay unlabeled
                                std::vector<std::vector<bool>> patterns;
                                if (mode == Mode::Literal) {
                                    patterns.push_back(std::vector<bool>(B, false));
                                } else {
                                    for (std::size_t bits = 0; bits < (std::size_t(1) << B);
                                         ++bits) {
                                        std::vector<bool> pat(B);
                                        bool feasible = true;
                                        for (std::size_t i = 0; i < B; ++i) pat[i] = (bits >> i) & 1;
                                        for (std::size_t i = 0; i < B && feasible; ++i)
                                            for (std::size_t j = i + 1; j < B; ++j)
                                                if (assign[i] == assign[j] && (!pat[i] || !pat[j])) {
                                                    feasible = false;
                                                    break;
                                                }
                                        if (feasible) patterns.push_back(pat);
                                    }
                                }
                                for (const auto& pat : patterns) {
                                    Candidate full = cand;
                                    std::uint64_t next = 0;
                                    for (std::size_t i = 0; i < B; ++i)
                                        full.branches.push_back(
                                            {assign[i], pat[i]
                                                            ? std::optional<std::uint64_t>(next++)
                                                            : std::nullopt});
                                    // flat odometer over all F and G choices
                                    std::size_t dims = 2 * widths.size();
                                    std::vector<std::size_t> wheel(dims, 0);
                                    auto wheel_size = [&](std::size_t d) {
                                        return d < widths.size() ? f_opts[d].size()
                                                                 : g_opts[d - widths.size()].size();
                                    };
                                    while (true) {
                                        std::vector<std::vector<std::size_t>> fc, gc;
                                        for (std::size_t a = 0; a < widths.size(); ++a) {
                                            fc.push_back(f_opts[a][wheel[a]]);
                                            gc.push_back(g_opts[a][wheel[widths.size() + a]]);
                                        }
                                        offer(assemble(full, c, mode, fc, gc));
                                        std::size_t d = 0;
                                        while (d < dims && ++wheel[d] == wheel_size(d))
                                            wheel[d++] = 0;
                                        if (d == dims) break;
                                    }
                                }
                            }
                        }
                    }
                    std::size_t i = 0;
                    while (i < n_nodes && ++pick[i] == options[i].size()) pick[i++] = 0;
                    if (i == n_nodes) break;
                }
            }
        }
    }

    std::vector<TauStructure> out;
    for (auto& [key, s] : reps) {
        (void)key;
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

ModelSurvey survey_one(const TauStructure& m, std::size_t c, std::size_t ext_budget, Mode mode) {
    ModelSurvey sv;
    sv.size = m.universe_size();
    CheckOptions opts;
    opts.declared_c = c;
    sv.maximal = !find_proper_extension(m, ext_budget, opts).has_value();

    Classification cl = classify(m, opts);
    std::size_t interior_levels = m.L.size() >= 2 ? m.L.size() - 1 : 0;
    bool long_by_count = interior_levels == c;
    StructureIndex ix(m);
    if ((cl.l_kind == LKind::LongL) != long_by_count) {
        sv.laws_ok = false;
        sv.reason = "classification disagrees with the interior level count";
        return sv;
    }
    if (mode == Mode::Literal && cl.l_kind == LKind::ShortL) {
        std::size_t chains = materialized_branches(m).size();
        if (ix.branch_nodes().size() > chains) {
            sv.laws_ok = false;
            sv.reason = "shortL literal model exceeds its chain bound";
            return sv;
        }
    }
    if (mode == Mode::Literal && cl.kurepa_analog) {
        sv.laws_ok = false;
        sv.reason = "literal mode admits no Kurepa analog";
        return sv;
    }
    if (cl.kurepa_analog && cl.l_kind != LKind::LongL) {
        sv.laws_ok = false;
        sv.reason = "Kurepa analog must be longL";
    }
    return sv;
}

}  // namespace

std::vector<ModelSurvey> survey_models_serial(const std::vector<TauStructure>& models,
                                              std::size_t c, std::size_t ext_budget, Mode mode) {
    std::vector<ModelSurvey> out(models.size());
    for (std::size_t i = 0; i < models.size(); ++i)
        out[i] = survey_one(models[i], c, ext_budget, mode);
    return out;
}

std::vector<ModelSurvey> survey_models_parallel(const std::vector<TauStructure>& models,
                                                std::size_t c, std::size_t ext_budget, Mode mode) {
    apply_thread_cap();
    std::vector<ModelSurvey> out(models.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(models.size()); ++i)
        out[i] = survey_one(models[i], c, ext_budget, mode);
    return out;
}

SpectrumReport spectra_report(const SpectrumOptions& opts, const std::vector<TauStructure>& extras) {
    if (opts.ext_budget < opts.max_size)
        throw Error(ErrorCode::BadBudget, "extension budget below max_size");
    auto models = enumerate_models(opts.max_size, opts.c, opts.mode);
    auto surveys = opts.parallel
                       ? survey_models_parallel(models, opts.c, opts.ext_budget, opts.mode)
                       : survey_models_serial(models, opts.c, opts.ext_budget, opts.mode);

    SpectrumReport rep;
    for (const auto& sv : surveys) rep.sizes_realized.insert(sv.size);
    for (const auto& sv : surveys)
        if (sv.maximal) rep.mm_sizes.insert(sv.size);
    for (std::size_t i = 0; i < surveys.size(); ++i) {
        if (!surveys[i].laws_ok) {
            rep.trichotomy_ok = false;
            rep.counterexample = dump_canonical(structure_to_json(models[i]));
            rep.counterexample_reason = surveys[i].reason;
            return rep;
        }
    }
    CheckOptions copts;
    copts.declared_c = opts.c;
    copts.mode_override = opts.mode;
    for (const auto& extra : extras) {
        Verdict v = check(extra, SentenceId::Psi, copts);
        if (!v.ok) {
            rep.trichotomy_ok = false;
            rep.counterexample = dump_canonical(structure_to_json(extra));
            rep.counterexample_reason =
                "injected structure fails validation: " + v.violations.front().tag;
            return rep;
        }
    }
    return rep;
}

}  // namespace kurepa
