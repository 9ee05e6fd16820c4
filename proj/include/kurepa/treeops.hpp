#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kurepa/core.hpp"

namespace kurepa {

/// Bare leveled tree. Parents sit exactly one level down; a node without one
/// is a root at its level (shifted merges park whole trees above level 0).
/// labels records branch identities per maximal chain, keyed by the chain's
/// top node.
struct PrunedTree {
    std::vector<std::vector<std::string>> levels;  // per level, sorted ids
    std::map<std::string, std::string> parent;     // child -> parent
    std::map<std::string, std::vector<std::uint64_t>> labels;  // chain top -> sorted labels

    std::size_t height() const { return levels.size(); }
    std::size_t node_count() const;
    bool empty() const { return levels.empty(); }

    bool operator==(const PrunedTree&) const = default;
};

/// Throws MalformedDocument unless levels/parent/labels are coherent
/// (ids unique, parents one level down and present for every node above
/// level 0, label keys are known nodes).
void validate_tree_shape(const PrunedTree& t);

/// Nodes without children, i.e. tops of the maximal chains.
std::vector<std::string> chain_tops(const PrunedTree& t);

std::size_t count_branches(const PrunedTree& t);

bool is_pruned(const PrunedTree& t);

/// Removes every node that does not extend to the top level; a tree whose
/// chains all die early collapses to the empty tree.
PrunedTree prune(const PrunedTree& t);

/// Root-to-top chains (sorted), for test oracles and decode.
std::vector<std::vector<std::string>> tree_maximal_chains(const PrunedTree& t);

/// Codes a tree into a tau-structure over c urelements: levels become the
/// interior of L plus a fresh max level, witnesses are synthesized
/// canonically, and (when with_branch_level) each maximal chain receives one
/// labeled branch node, or exactly the branches recorded in t.labels when
/// present. Requires every level width and the level count to fit under c.
TauStructure encode_tree(const PrunedTree& t, std::size_t c, bool with_branch_level);

/// Inverse of encode_tree on its image: strips the branch level, recovers
/// parents from the tree order, and records labeled branches per chain top.
/// Requires a sigma-prime-validated, graded structure (every interior node
/// above the least level has a predecessor one level down) and throws
/// NotGraded otherwise.
PrunedTree decode_structure(const TauStructure& s);

/// Disjoint union with tree i shifted up by i levels: level j of tree i lands
/// at level i+j, node ids get a "t<i>/" prefix, and height obeys
/// max_i(i + height(tree_i)). Branch counts add up.
PrunedTree merge_shifted(const std::vector<PrunedTree>& trees);

}  // namespace kurepa
