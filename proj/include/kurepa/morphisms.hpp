#pragma once

#include <optional>

#include "kurepa/checker.hpp"
#include "kurepa/core.hpp"

namespace kurepa {

struct EmbeddingReport {
    bool is_sub = false;
    bool l_initial_segment = false;
    bool levels_equal = false;
    bool order_preserved = false;
    std::size_t new_branch_count = 0;

    bool operator==(const EmbeddingReport&) const = default;
};

/// Decides m <= n in the substructure sense: carriers contained, every
/// relation and witness function of m the restriction of n's, level tags
/// coherent (interior tags equal; m's max may only reappear as a limit, so L^m
/// sits as a position prefix of L^n). The report's segment/level/order fields
/// are recomputed from the raw data, independently of the is_sub decision.
/// Under psi the urelement sets must coincide (the cardinality pin is
/// constant-like); pass sigma-prime to allow P^m ⊂ P^n.
/// Throws InconsistentCarriers when an id is used in different carrier roles.
EmbeddingReport is_substructure_model(const TauStructure& m, const TauStructure& n,
                                      SentenceId sentence = SentenceId::Psi);

/// Smallest proper extension of a validated model within the size budget, or
/// nothing. Candidate order is fixed: single branch additions over the
/// materialized maximal chains (unlabeled over unused chains first, then a
/// fresh label over every chain in surrogate mode), then the one-level end
/// extension when m is shortL. Throws BadBudget when budget < |m|.
std::optional<TauStructure> find_proper_extension(const TauStructure& m, std::size_t budget,
                                                  const CheckOptions& opts = {});

}  // namespace kurepa
