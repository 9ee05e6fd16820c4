#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kurepa/amalgam.hpp"
#include "kurepa/canonical.hpp"
#include "kurepa/checker.hpp"
#include "kurepa/core.hpp"
#include "kurepa/forcing.hpp"
#include "kurepa/json_io.hpp"
#include "kurepa/morphisms.hpp"
#include "kurepa/parallel.hpp"
#include "kurepa/spectrum.hpp"
#include "kurepa/treeops.hpp"

namespace {

constexpr const char* kVersion = "kurepa 0.1.0";

using namespace kurepa;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

Mode parse_mode(const std::string& mode) {
    if (mode == "literal") return Mode::Literal;
    if (mode == "surrogate") return Mode::Surrogate;
    throw Error(ErrorCode::Usage, "mode must be literal or surrogate");
}

int cmd_validate(const std::string& file, const std::string& sentence, const std::string& mode,
                 std::int64_t declared_c, bool pruned) {
    TauStructure s = load_structure(file);
    auto which = sentence_from_name(sentence);
    if (!which) throw Error(ErrorCode::Usage, "unknown sentence '" + sentence + "'");
    CheckOptions opts;
    opts.pruned_axiom = pruned;
    if (!mode.empty()) opts.mode_override = parse_mode(mode);
    if (declared_c >= 0) opts.declared_c = static_cast<std::size_t>(declared_c);
    Verdict v = check(s, *which, opts);
    for (const auto& viol : v.violations) {
        std::string ws;
        for (std::size_t i = 0; i < viol.witnesses.size(); ++i)
            ws += (i ? "," : "") + viol.witnesses[i];
        std::cout << viol.tag << "\t" << ws << "\t" << viol.message << "\n";
    }
    return v.ok ? 0 : 1;
}

int cmd_compare(const std::string& mfile, const std::string& nfile, const std::string& sentence) {
    TauStructure m = load_structure(mfile), n = load_structure(nfile);
    SentenceId which = SentenceId::Psi;
    if (!sentence.empty()) {
        auto parsed = sentence_from_name(sentence);
        if (!parsed) throw Error(ErrorCode::Usage, "unknown sentence '" + sentence + "'");
        which = *parsed;
    }
    EmbeddingReport rep = is_substructure_model(m, n, which);
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::cout << "is_sub=" << b(rep.is_sub) << "\n"
              << "l_initial_segment=" << b(rep.l_initial_segment) << "\n"
              << "levels_equal=" << b(rep.levels_equal) << "\n"
              << "order_preserved=" << b(rep.order_preserved) << "\n"
              << "new_branch_count=" << rep.new_branch_count << "\n";
    return rep.is_sub ? 0 : 1;
}

int cmd_extend(const std::string& file, std::size_t budget, const std::string& out) {
    TauStructure m = load_structure(file);
    auto ext = find_proper_extension(m, budget);
    if (!ext) return 1;
    emit(dump_canonical(structure_to_json(*ext)), out);
    return 0;
}

int cmd_amalgamate(const std::string& base, const std::string& left, const std::string& right,
                   const std::string& out) {
    TauStructure m0 = load_structure(base);
    TauStructure m1 = load_structure(left);
    TauStructure m2 = load_structure(right);
    AmalgamResult res = amalgamate(m0, m1, m2);
    if (!out.empty()) save_structure(out, res.n);
    nlohmann::json j;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : res.identified_pairs) pairs.push_back(nlohmann::json::array({a, b}));
    j["identified_pairs"] = pairs;
    j["universe_size"] = res.n.universe_size();
    std::cout << dump_canonical(j);
    return 0;
}

int cmd_witness(const std::string& kind, std::size_t size, std::size_t budget,
                const std::string& prefix) {
    nlohmann::json cert;
    cert["kind"] = kind;
    cert["budget"] = budget;
    if (kind == "jep") {
        auto [a, b] = jep_witness(size);
        save_structure(prefix + "-m1.json", a);
        save_structure(prefix + "-m2.json", b);
        cert["size"] = size;
        cert["joint_extension_found"] = joint_embed_search(a, b, budget).has_value();
    } else if (kind == "ap") {
        ApWitness w = ap_failure_witness();
        save_structure(prefix + "-m0.json", w.m0);
        save_structure(prefix + "-m1.json", w.m1);
        save_structure(prefix + "-m2.json", w.m2);
        cert["amalgam_found"] = joint_embed_search(w.m1, w.m2, budget).has_value();
        cert["control_ok"] = joint_embed_search(w.m1, w.m1, budget).has_value();
    } else {
        throw Error(ErrorCode::Usage, "witness kind must be jep or ap");
    }
    write_text_file(prefix + "-certificate.json", dump_canonical(cert));
    std::cout << dump_canonical(cert);
    return 0;
}

int cmd_merge(const std::vector<std::string>& files, const std::string& out) {
    std::vector<PrunedTree> trees;
    for (const auto& f : files) trees.push_back(load_tree(f));
    PrunedTree merged = merge_shifted(trees);
    emit(dump_canonical(tree_to_json(merged)), out);
    return 0;
}

int cmd_branches(const std::string& file) {
    std::cout << count_branches(load_tree(file)) << "\n";
    return 0;
}

int cmd_force(std::size_t height, std::size_t branch_count, std::size_t width, std::uint64_t seed,
              const std::string& out) {
    std::vector<DenseRequest> reqs;
    reqs.push_back(HeightAtLeast{height});
    for (std::size_t i = 0; i < branch_count; ++i)
        reqs.push_back(IndexInDomain{static_cast<std::int64_t>(i)});
    for (std::size_t i = 0; i < branch_count; ++i)
        for (std::size_t j = i + 1; j < branch_count; ++j)
            reqs.push_back(Split{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
    GenericRun run = run_generic(reqs, width, seed);
    emit(dump_canonical(run_to_json(run)), out);
    return 0;
}

int cmd_cohen_restrict(const std::string& conds_file, const std::string& filter_file,
                       const std::string& out) {
    auto load_conds = [](const std::string& path) {
        nlohmann::json j = parse_json_text(read_text_file(path), path);
        if (!j.is_object() || !j.contains("conditions"))
            throw Error(ErrorCode::MalformedDocument, path + ": expected a 'conditions' array");
        std::vector<CohenCondition> out_conds;
        for (const auto& e : j["conditions"]) out_conds.push_back(cohen_from_json(e));
        return out_conds;
    };
    auto conds = load_conds(conds_file);
    auto filter = load_conds(filter_file);
    CohenRestriction r = cohen_support_and_restrict(conds, filter);
    nlohmann::json j;
    nlohmann::json dstar = nlohmann::json::array();
    for (const auto& [i, k] : r.dstar) dstar.push_back(nlohmann::json::array({i, k}));
    j["dstar"] = dstar;
    j["d"] = r.d;
    nlohmann::json restricted = nlohmann::json::array();
    for (const auto& g : r.restricted) restricted.push_back(cohen_to_json(g));
    j["restricted"] = restricted;
    emit(dump_canonical(j), out);
    return 0;
}

int cmd_spectrum(std::size_t max_size, std::size_t c, std::size_t budget, const std::string& mode,
                 bool serial, const std::string& out) {
    SpectrumOptions opts;
    opts.max_size = max_size;
    opts.c = c;
    opts.ext_budget = budget;
    opts.mode = mode.empty() ? Mode::Literal : parse_mode(mode);
    opts.parallel = !serial;
    SpectrumReport rep = spectra_report(opts);
    nlohmann::json j;
    j["max_size"] = max_size;
    j["c"] = c;
    j["budget"] = budget;
    j["mode"] = mode_name(opts.mode);
    j["sizes_realized"] = rep.sizes_realized;
    j["mm_sizes"] = rep.mm_sizes;
    j["trichotomy_ok"] = rep.trichotomy_ok;
    if (rep.counterexample) {
        j["counterexample"] = nlohmann::json::parse(*rep.counterexample);
        j["counterexample_reason"] = rep.counterexample_reason;
    } else {
        j["counterexample"] = nullptr;
    }
    emit(dump_canonical(j), out);
    return rep.trichotomy_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    CLI::App app{"workbench for finite Kurepa-style tree structures"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string file, file2, sentence = "psi", mode, out, kind;
    std::int64_t declared_c = -1;
    bool pruned = false, serial = false;
    std::size_t budget = 10, size = 4, height = 3, branch_count = 3, width = 4, max_size = 6,
                c_param = 2;
    std::uint64_t seed = 0;
    std::vector<std::string> files;

    auto* validate = app.add_subcommand("validate", "check a structure against a sentence");
    validate->add_option("file", file)->required();
    validate->add_option("--sentence", sentence);
    validate->add_option("--mode", mode);
    validate->add_option("--c", declared_c);
    validate->add_flag("--pruned", pruned);

    auto* compare = app.add_subcommand("compare", "substructure report for two structures");
    compare->add_option("left", file)->required();
    compare->add_option("right", file2)->required();
    compare->add_option("--sentence", sentence);

    auto* extend = app.add_subcommand("extend", "search for a proper extension");
    extend->add_option("file", file)->required();
    extend->add_option("--budget", budget)->required();
    extend->add_option("-o,--output", out);

    auto* amal = app.add_subcommand("amalgamate", "amalgamate two extensions over a base");
    std::string base, left, right;
    amal->add_option("--base", base)->required();
    amal->add_option("--left", left)->required();
    amal->add_option("--right", right)->required();
    amal->add_option("-o,--output", out);

    auto* witness = app.add_subcommand("witness", "emit jep or ap failure witnesses");
    witness->add_option("--kind", kind)->required();
    witness->add_option("--size", size);
    witness->add_option("--budget", budget);
    witness->add_option("-o,--output", out)->required();

    auto* merge = app.add_subcommand("merge", "shifted disjoint union of trees");
    merge->add_option("files", files)->required()->expected(-1);
    merge->add_option("-o,--output", out);

    auto* branches = app.add_subcommand("branches", "count maximal chains of a tree");
    branches->add_option("file", file)->required();

    auto* force = app.add_subcommand("force", "run the dense-set scheduler");
    force->add_option("--height", height);
    force->add_option("--branches", branch_count);
    force->add_option("--width", width);
    force->add_option("--seed", seed);
    force->add_option("-o,--output", out);

    auto* cohen = app.add_subcommand("cohen-restrict", "support and restriction of a filter");
    std::string conds_file, filter_file;
    cohen->add_option("--conds", conds_file)->required();
    cohen->add_option("--filter", filter_file)->required();
    cohen->add_option("-o,--output", out);

    auto* spectrum = app.add_subcommand("spectrum", "exhaustive model survey");
    spectrum->add_option("--max-size", max_size);
    spectrum->add_option("--c", c_param);
    spectrum->add_option("--budget", budget);
    spectrum->add_option("--mode", mode);
    spectrum->add_flag("--serial", serial);
    spectrum->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, sentence, mode, declared_c, pruned);
        if (compare->parsed()) return cmd_compare(file, file2, sentence);
        if (extend->parsed()) return cmd_extend(file, budget, out);
        if (amal->parsed()) return cmd_amalgamate(base, left, right, out);
        if (witness->parsed()) return cmd_witness(kind, size, budget, out);
        if (merge->parsed()) return cmd_merge(files, out);
        if (branches->parsed()) return cmd_branches(file);
        if (force->parsed()) return cmd_force(height, branch_count, width, seed, out);
        if (cohen->parsed()) return cmd_cohen_restrict(conds_file, filter_file, out);
        if (spectrum->parsed())
            return cmd_spectrum(max_size, c_param, budget, mode, serial, out);
    } catch (const kurepa::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
