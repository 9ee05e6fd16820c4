#pragma once

#include <optional>
#include <utility>

#include "kurepa/checker.hpp"
#include "kurepa/core.hpp"

namespace kurepa {

struct AmalgamResult {
    TauStructure n;
    /// Branch pairs (from m1, from m2) merged because they agree on the
    /// identification key: predecessor set plus label in surrogate mode,
    /// predecessor set alone in literal mode. The m1 id survives in n.
    PairList identified_pairs;
};

/// The amalgam of two longL extensions of a common longL base: the base
/// together with all maximal branches of both sides, identified per the key
/// above. Inputs must share mode, validate under psi, have m0 below m1 and
/// m2, and agree on L (longL forces this). Shortness raises
/// NotUncountableSurrogate; other precondition failures raise
/// PreconditionFailed or InconsistentCarriers.
AmalgamResult amalgamate(const TauStructure& m0, const TauStructure& m1, const TauStructure& m2,
                         const CheckOptions& opts = {});

/// A validated structure extending both m and n over their shared carriers,
/// or nothing. The obstruction analysis is complete for this class: level
/// data pins everything except the branch level and end extensions, so only
/// the plain union and its one-level end extension can witness a joint
/// extension. extra_budget bounds the candidate size by
/// |merged carriers| + extra_budget.
std::optional<TauStructure> joint_embed_search(const TauStructure& m, const TauStructure& n,
                                               std::size_t extra_budget,
                                               const CheckOptions& opts = {});

/// Two validated longL models of the given level-order length whose L
/// sequences differ only in one kind tag (successor vs limit) at the last
/// interior position; no common extension can realize both tags at one
/// position. Requires size >= 4 (BadSize).
std::pair<TauStructure, TauStructure> jep_witness(std::size_t size);

/// A shortL base with two end extensions whose appended levels carry
/// conflicting kind tags; the pair has no common extension while the control
/// pair (m2 := m1) trivially does.
struct ApWitness {
    TauStructure m0, m1, m2;
};
ApWitness ap_failure_witness();

}  // namespace kurepa
