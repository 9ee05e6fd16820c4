#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "kurepa/core.hpp"
#include "kurepa/forcing.hpp"
#include "kurepa/treeops.hpp"

namespace kurepa::testing {

using Rng = std::mt19937_64;

/// Exhaustive structured sweep of raw structure documents with at most
/// max_elements carrier elements: every carrier split, level-tag pattern
/// (including misplaced zero/limit tags, bad successor witnesses and a
/// max-level witness entry), every node-to-level assignment, every
/// level-increasing tree relation, partial and total witness families, and
/// label patterns with deliberate collisions. Arbitrary (level-violating)
/// tree pairs and wilder junk live in fuzz_structure. Work units are dealt
/// round-robin to shard in [0, nshards) so callers can sweep in parallel.
void exhaustive_raw_sweep(std::size_t max_elements, std::size_t shard, std::size_t nshards,
                          const std::function<void(const TauStructure&)>& fn);

/// Attach prec/H data to a structure: every prec subset over the branch
/// level and a small set of H mutations around the canonical correct family.
void sigma_attachments(const TauStructure& base,
                       const std::function<void(const TauStructure&)>& fn);

/// Referentially valid but otherwise unconstrained random document.
TauStructure fuzz_structure(Rng& rng, std::size_t max_elements, bool with_prec_h);

/// Validated longL psi-model triple over a shared base: m1 and m2 extend m0
/// by random fresh branches (surrogate mode), suitable for amalgamation.
struct LongTriple {
    TauStructure m0, m1, m2;
};
LongTriple random_long_triple(Rng& rng, std::size_t max_universe);

/// All parent-coherent leveled trees with at most max_nodes nodes, sibling
/// order quotiented away (parent sequences non-decreasing).
std::vector<PrunedTree> enumerate_trees(std::size_t max_nodes);

PrunedTree random_tree(Rng& rng, std::size_t max_nodes);

/// Canonical full labeling: every maximal chain gets one label, 0..B-1 in
/// chain order (what encode_tree synthesizes when no labels are present).
PrunedTree with_canonical_labels(const PrunedTree& t);

/// Restriction-closed, pairwise compatible family plus a subset of it to act
/// as the support-defining conditions.
struct CohenFamily {
    std::vector<CohenCondition> filter;
    std::vector<CohenCondition> conds;
};
CohenFamily random_cohen_family(Rng& rng);

/// Isomorphism by brute force over all carrier bijections that respect level
/// positions, node levels and the label order. Exponential; sizes <= 6 only.
bool brute_isomorphic(const TauStructure& a, const TauStructure& b);

/// Maximal chains of a tree by exhaustive chain enumeration (test oracle for
/// count_branches and friends).
std::vector<std::vector<std::string>> brute_maximal_chains(const PrunedTree& t);

}  // namespace kurepa::testing
