#include "doctest.h"
#include "generators.hpp"
#include "kurepa/forcing.hpp"
#include "kurepa/json_io.hpp"

using namespace kurepa;
using namespace kurepa::testing;

namespace {

std::vector<KurepaCondition> small_condition_space(std::size_t max_nodes, std::int64_t max_index,
                                                   std::size_t max_dom) {
    std::vector<KurepaCondition> out;
    for (const auto& t : enumerate_trees(max_nodes)) {
        if (t.empty() || !is_pruned(t)) continue;
        const auto& top = t.levels.back();
        // f: dom over {0..max_index}, values onto the top level
        std::vector<std::int64_t> universe;
        for (std::int64_t i = 0; i <= max_index; ++i) universe.push_back(i);
        for (std::size_t dbits = 0; dbits < (std::size_t(1) << universe.size()); ++dbits) {
            std::vector<std::int64_t> dom;
            for (std::size_t i = 0; i < universe.size(); ++i)
                if ((dbits >> i) & 1) dom.push_back(universe[i]);
            if (dom.size() > max_dom || dom.size() < top.size()) continue;
            // all value assignments, filtered to surjections
            std::vector<std::size_t> wheel(dom.size(), 0);
            while (true) {
                KurepaCondition p;
                p.tree = t;
                std::set<std::string> ran;
                for (std::size_t i = 0; i < dom.size(); ++i) {
                    p.f[dom[i]] = top[wheel[i]];
                    ran.insert(top[wheel[i]]);
                }
                if (ran.size() == top.size() && !dom.empty()) out.push_back(p);
                std::size_t i = 0;
                while (i < wheel.size() && ++wheel[i] == top.size()) wheel[i++] = 0;
                if (i == wheel.size()) break;
                if (wheel.empty()) break;
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("leq examples") {
    KurepaCondition p = trivial_condition();
    CHECK(leq(p, p));

    KurepaCondition q = extend_to_meet(p, HeightAtLeast{2}, 4);
    CHECK(leq(q, p));
    CHECK(!leq(p, q));

    KurepaCondition dropped = q;
    dropped.f.erase(0);
    dropped.f[1] = q.f.at(0);
    CHECK(!leq(dropped, q));
}

TEST_CASE("extend_to_meet is idempotent on met requests") {
    KurepaCondition p = trivial_condition();
    CHECK(extend_to_meet(p, IndexInDomain{0}, 4) == p);
    KurepaCondition q = extend_to_meet(p, HeightAtLeast{1}, 4);
    CHECK(q == p);
}

TEST_CASE("splits separate equal images with one taller level") {
    KurepaCondition p = trivial_condition();
    p.f[1] = p.f.at(0);
    KurepaCondition q = extend_to_meet(p, Split{0, 1}, 4);
    CHECK(leq(q, p));
    CHECK(q.tree.height() == 2);
    CHECK(q.f.at(0) != q.f.at(1));
    CHECK(q.tree.levels.back().size() == 2);
}

TEST_CASE("splits reuse top-level room before growing") {
    KurepaCondition p = trivial_condition();
    p = extend_to_meet(p, Split{0, 1}, 4);  // width 2 now
    KurepaCondition q = extend_to_meet(p, Split{0, 2}, 4);
    CHECK(q.tree.height() == p.tree.height());  // index 2 lands on the other node
    CHECK(q.f.at(0) != q.f.at(2));
}

TEST_CASE("height extensions push every image upward") {
    KurepaCondition p = trivial_condition();
    KurepaCondition q = extend_to_meet(p, HeightAtLeast{3}, 4);
    CHECK(q.tree.height() == 3);
    for (const auto& [idx, v] : q.f) {
        (void)idx;
        CHECK(std::find(q.tree.levels.back().begin(), q.tree.levels.back().end(), v) !=
              q.tree.levels.back().end());
    }
    CHECK(leq(q, p));
}

TEST_CASE("leq is a partial order on a small exhaustive space") {
    auto conds = small_condition_space(4, 2, 2);
    REQUIRE(conds.size() > 20);
    for (const auto& p : conds) CHECK(leq(p, p));
    std::vector<std::pair<std::size_t, std::size_t>> le;
    for (std::size_t i = 0; i < conds.size(); ++i)
        for (std::size_t j = 0; j < conds.size(); ++j)
            if (leq(conds[i], conds[j])) le.push_back({i, j});
    for (const auto& [i, j] : le)
        if (leq(conds[j], conds[i]) && i != j) CHECK(conds[i] == conds[j]);
    std::set<std::pair<std::size_t, std::size_t>> le_set(le.begin(), le.end());
    for (const auto& [i, j] : le)
        for (const auto& [j2, k] : le)
            if (j == j2) CHECK(le_set.count({i, k}) == 1);
}

TEST_CASE("the scheduled run meets every request deterministically") {
    std::vector<DenseRequest> reqs{HeightAtLeast{3}, IndexInDomain{0}, IndexInDomain{1},
                                   IndexInDomain{2}, Split{0, 1}, Split{0, 2}, Split{1, 2}};
    GenericRun run = run_generic(reqs, 4, 7);
    const KurepaCondition& last = run.trace.back();
    CHECK(last.tree.height() >= 3);
    for (const auto& d : reqs) CHECK(meets(last, d));
    std::set<std::vector<std::string>> chains;
    for (int i = 0; i < 3; ++i) chains.insert(run.branches.at(i));
    CHECK(chains.size() == 3);
    CHECK(is_pruned(run.final_tree));
    CHECK(prune(run.final_tree) == run.final_tree);

    GenericRun again = run_generic(reqs, 4, 7);
    CHECK(dump_canonical(run_to_json(run)) == dump_canonical(run_to_json(again)));

    GenericRun empty = run_generic({}, 4, 0);
    CHECK(empty.trace.size() == 1);
    CHECK(empty.final_tree == trivial_condition().tree);
}

TEST_CASE("runner chains descend and admit strict lower bounds") {
    std::vector<DenseRequest> reqs{HeightAtLeast{2}, IndexInDomain{1}, Split{0, 1},
                                   HeightAtLeast{4}, IndexInDomain{2}, Split{1, 2}};
    GenericRun run = run_generic(reqs, 4, 0);
    for (std::size_t i = 0; i < run.trace.size(); ++i)
        for (std::size_t j = i; j < run.trace.size(); ++j)
            CHECK(leq(run.trace[j], run.trace[i]));
    KurepaCondition below =
        extend_to_meet(run.trace.back(), HeightAtLeast{run.trace.back().tree.height() + 1}, 4);
    for (const auto& p : run.trace) CHECK(leq(below, p));
    CHECK(below != run.trace.back());
}

TEST_CASE("eight mutually split branches do not fit through width four") {
    // a width-w level holds at most w pairwise split branch images, so this
    // schedule is unsatisfiable as a whole and the runner reports the first
    // request that cannot be met
    std::vector<DenseRequest> reqs{HeightAtLeast{5}};
    for (std::int64_t i = 0; i < 8; ++i) reqs.push_back(IndexInDomain{i});
    for (std::int64_t i = 0; i < 8; ++i)
        for (std::int64_t j = i + 1; j < 8; ++j) reqs.push_back(Split{i, j});
    CHECK_THROWS_AS((void)run_generic(reqs, 4, 0), Error);
    try {
        (void)run_generic(reqs, 4, 0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WidthExceeded);
    }

    GenericRun wide = run_generic(reqs, 8, 0);
    CHECK(wide.trace.back().tree.height() >= 5);
    std::set<std::vector<std::string>> chains;
    for (int i = 0; i < 8; ++i) chains.insert(wide.branches.at(i));
    CHECK(chains.size() == 8);
}

TEST_CASE("suborder restriction repairs surjectivity with mirrored indices") {
    KurepaCondition p = trivial_condition();
    p = extend_to_meet(p, IndexInDomain{3}, 4);
    p = extend_to_meet(p, Split{0, 3}, 4);

    CHECK(restrict_to_suborder(p, {0, 3}) == p);
    CHECK(restrict_to_suborder(p, {0, 1, 2, 3, 9}) == p);

    KurepaCondition empty_user = restrict_to_suborder(p, {});
    CHECK(empty_user.tree == p.tree);
    for (const auto& [idx, v] : empty_user.f) CHECK(idx < 0);
    std::set<std::string> ran;
    for (const auto& [idx, v] : empty_user.f) ran.insert(v);
    std::set<std::string> top(p.tree.levels.back().begin(), p.tree.levels.back().end());
    CHECK(ran == top);

    KurepaCondition half = restrict_to_suborder(p, {0});
    CHECK(half.f.count(0) == 1);
    CHECK(half.f.count(3) == 0);
    CHECK(half.f.count(-4) == 1);
    CHECK(half.f.at(-4) == p.f.at(3));
}

TEST_CASE("restriction commutes with leq at a fixed index set") {
    Rng rng(31);
    auto random_condition_pair = [&](KurepaCondition& p, KurepaCondition& q) {
        p = trivial_condition();
        std::uniform_int_distribution<int> steps(0, 3), idx(0, 5);
        for (int s = steps(rng); s > 0; --s)
            p = extend_to_meet(p, IndexInDomain{idx(rng)}, 5);
        q = p;
        for (int s = steps(rng) + 1; s > 0; --s) {
            switch (idx(rng) % 3) {
                case 0: q = extend_to_meet(q, HeightAtLeast{q.tree.height() + 1}, 5); break;
                case 1: q = extend_to_meet(q, IndexInDomain{idx(rng)}, 5); break;
                default: {
                    int a = idx(rng), b = idx(rng);
                    if (a != b) q = extend_to_meet(q, Split{a, b}, 5);
                }
            }
        }
    };
    for (int i = 0; i < 1000; ++i) {
        KurepaCondition p, q;
        random_condition_pair(p, q);
        REQUIRE(leq(q, p));
        std::set<std::int64_t> idx;
        std::uniform_int_distribution<int> flip(0, 1);
        for (std::int64_t d = 0; d < 6; ++d)
            if (flip(rng)) idx.insert(d);
        CHECK(leq(restrict_to_suborder(q, idx), restrict_to_suborder(p, idx)));
        // enlargement outside p's domain also commutes
        std::set<std::int64_t> wider = idx;
        for (std::int64_t d = 6; d < 9; ++d)
            if (flip(rng)) wider.insert(d);
        CHECK(leq(restrict_to_suborder(q, wider), restrict_to_suborder(p, idx)));
    }
}

TEST_CASE("cohen support and restriction") {
    CohenCondition a, b;
    a.entries[{3, 0}] = true;
    a.entries[{5, 1}] = false;
    b.entries[{3, 2}] = true;
    // build the closure of {a, b}
    std::vector<CohenCondition> filter{a, b};
    for (const auto& g : {a, b})
        for (const auto& [key, bit] : g.entries) {
            CohenCondition h = g;
            h.entries.erase(key);
            filter.push_back(h);
            (void)bit;
        }
    filter.push_back(CohenCondition{});
    std::sort(filter.begin(), filter.end());
    filter.erase(std::unique(filter.begin(), filter.end()), filter.end());

    CohenRestriction r = cohen_support_and_restrict({a, b}, filter);
    CHECK(r.dstar == std::set<std::pair<std::uint64_t, std::uint64_t>>{{3, 0}, {3, 2}, {5, 1}});
    CHECK(r.d == std::set<std::uint64_t>{3, 5});
    for (const auto& g : {a, b})
        CHECK(std::find(r.restricted.begin(), r.restricted.end(), g) != r.restricted.end());

    CohenRestriction empty = cohen_support_and_restrict({}, filter);
    CHECK(empty.d.empty());
    CHECK(empty.dstar.empty());
    for (const auto& g : empty.restricted) CHECK(g.entries.empty());
}

TEST_CASE("filters are checked") {
    CohenCondition a, b;
    a.entries[{0, 0}] = true;
    b.entries[{0, 0}] = false;
    CHECK_THROWS_AS((void)cohen_support_and_restrict({}, {a, b}), Error);  // incompatible
    CHECK_THROWS_AS((void)cohen_support_and_restrict({}, {a}), Error);     // not closed
    CohenCondition empty;
    CHECK_THROWS_AS((void)cohen_support_and_restrict({b}, {empty, a}), Error);  // b outside
}

TEST_CASE("random families restrict to filters containing their conditions") {
    Rng rng(44);
    for (int i = 0; i < 200; ++i) {
        CohenFamily fam = random_cohen_family(rng);
        CohenRestriction r = cohen_support_and_restrict(fam.conds, fam.filter);
        // direct recomputation
        std::set<std::pair<std::uint64_t, std::uint64_t>> dstar;
        for (const auto& p : fam.conds)
            for (const auto& [key, bit] : p.entries) {
                dstar.insert(key);
                (void)bit;
            }
        CHECK(r.dstar == dstar);
        for (const auto& p : fam.conds)
            CHECK(std::find(r.restricted.begin(), r.restricted.end(), p) != r.restricted.end());
        for (std::size_t x = 0; x < r.restricted.size(); ++x)
            for (std::size_t y = x + 1; y < r.restricted.size(); ++y)
                CHECK(cohen_compatible(r.restricted[x], r.restricted[y]));
        std::set<CohenCondition> rset(r.restricted.begin(), r.restricted.end());
        for (const auto& g : r.restricted)
            for (const auto& [key, bit] : g.entries) {
                CohenCondition h = g;
                h.entries.erase(key);
                CHECK(rset.count(h) == 1);
                (void)bit;
            }
    }
}

TEST_CASE("conditions and runs serialize exactly") {
    KurepaCondition p = trivial_condition();
    p = extend_to_meet(p, Split{0, 4}, 3);
    p = restrict_to_suborder(p, {4});
    KurepaCondition back = condition_from_json(condition_to_json(p));
    CHECK(back == p);

    std::vector<DenseRequest> reqs{HeightAtLeast{2}, IndexInDomain{1}, Split{0, 1}};
    GenericRun run = run_generic(reqs, 4, 3);
    GenericRun run_back = run_from_json(run_to_json(run));
    CHECK(run_back == run);
}
