#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include "json.hpp"
#include "kurepa/treeops.hpp"

namespace kurepa {

/// Forcing condition (t, f): an initial tree segment of height beta+1 and a
/// finite map from branch indices to top-level nodes covering the whole top
/// level. Non-negative indices belong to callers; negative ones are the
/// reserved namespace used by suborder restriction repair.
struct KurepaCondition {
    PrunedTree tree;
    std::map<std::int64_t, std::string> f;

    bool operator==(const KurepaCondition&) const = default;
};

struct HeightAtLeast {
    std::size_t height;
    bool operator==(const HeightAtLeast&) const = default;
};
struct IndexInDomain {
    std::int64_t index;
    bool operator==(const IndexInDomain&) const = default;
};
struct Split {
    std::int64_t first, second;
    bool operator==(const Split&) const = default;
};
using DenseRequest = std::variant<HeightAtLeast, IndexInDomain, Split>;

struct GenericRun {
    std::size_t width = 0;
    std::uint64_t seed = 0;
    std::vector<DenseRequest> requests;
    std::vector<KurepaCondition> trace;  // trivial condition first, then one entry per request
    PrunedTree final_tree;
    std::map<std::int64_t, std::vector<std::string>> branches;

    bool operator==(const GenericRun&) const = default;
};

/// Shape and width checks for a condition: coherent pruned tree, nonempty,
/// levels at most width wide, f into the top level and onto it.
void validate_condition(const KurepaCondition& p, std::size_t width);

/// q extends p: p's tree is an initial segment of q's, dom(p.f) within
/// dom(q.f), and every branch image either stays put (equal heights) or moves
/// strictly up the tree.
bool leq(const KurepaCondition& q, const KurepaCondition& p);

bool meets(const KurepaCondition& p, const DenseRequest& d);

/// Deterministic minimal extension of p meeting d under the width bound:
/// new levels give every current top node one child (two under a split),
/// fresh indices land on the lowest-id top node. Unmeetable splits raise
/// WidthExceeded.
KurepaCondition extend_to_meet(const KurepaCondition& p, const DenseRequest& d, std::size_t width);

KurepaCondition trivial_condition();

/// Runs the scheduled requests from the trivial condition. The trace is
/// bit-exact reproducible; the seed is recorded and reserved for tie
/// breaking, which the fixed id order currently never needs.
GenericRun run_generic(const std::vector<DenseRequest>& requests, std::size_t width,
                       std::uint64_t seed);

/// Same tree, f restricted to the kept non-negative indices; every dropped
/// user index delta is mirrored as -delta-1 so the map stays onto the top
/// level. Reserved indices already present are kept as they are. With a fixed
/// index set this commutes with leq.
KurepaCondition restrict_to_suborder(const KurepaCondition& p, const std::set<std::int64_t>& idx);

/// Finite partial binary function on (coordinate, slot) pairs.
struct CohenCondition {
    std::map<std::pair<std::uint64_t, std::uint64_t>, bool> entries;

    bool operator<(const CohenCondition& o) const { return entries < o.entries; }
    bool operator==(const CohenCondition&) const = default;
};

bool cohen_compatible(const CohenCondition& a, const CohenCondition& b);

struct CohenRestriction {
    std::set<std::pair<std::uint64_t, std::uint64_t>> dstar;
    std::set<std::uint64_t> d;
    std::vector<CohenCondition> restricted;
};

/// Support computation: dstar is the union of the conditions' domains, d its
/// coordinate projection, and restricted the filter cut down to coordinates
/// in d. The filter must be restriction-closed and pairwise compatible and
/// must contain every condition in conds (NotAFilter otherwise).
CohenRestriction cohen_support_and_restrict(const std::vector<CohenCondition>& conds,
                                            const std::vector<CohenCondition>& filter);

nlohmann::json condition_to_json(const KurepaCondition& p);
KurepaCondition condition_from_json(const nlohmann::json& j);
nlohmann::json request_to_json(const DenseRequest& d);
DenseRequest request_from_json(const nlohmann::json& j);
nlohmann::json run_to_json(const GenericRun& r);
GenericRun run_from_json(const nlohmann::json& j);
nlohmann::json cohen_to_json(const CohenCondition& c);
CohenCondition cohen_from_json(const nlohmann::json& j);

}  // namespace kurepa
