#pragma once

#include <optional>

#include "kurepa/core.hpp"

namespace kurepa {

enum class SentenceId { Sigma, SigmaPrime, Psi };

const char* sentence_name(SentenceId s);
std::optional<SentenceId> sentence_from_name(const std::string& name);

struct CheckOptions {
    /// Cardinality pin for the "P is countably infinite" clause of psi.
    /// Absent means "use |P|" (the structure declares its own scale).
    std::optional<std::size_t> declared_c;
    /// Optional pruning clause: every maximal interior chain reaches the top
    /// interior level. Off by default.
    bool pruned_axiom = false;
    /// Overrides the structure's own mode when set.
    std::optional<Mode> mode_override;
};

enum class LKind { ShortL, LongL };

struct Classification {
    LKind l_kind = LKind::ShortL;
    bool kurepa_analog = false;

    bool operator==(const Classification&) const = default;
};

/// Validates s against the requested sentence. Violations carry stable axiom
/// tags (the public contract for tests and the CLI):
///   L-zero, L-max, L-succ-witness, label-placement, label-distinct,
///   T-level, T-transitive, T-chain, limit-unique, branch-maximal,
///   F-total, F-bound, F-surjective, F-domain,
///   G-total, G-level, G-surjective, G-domain,
///   prec-linear, prec-no-max, H-total, H-bound, H-surjective, H-domain,
///   P-countable, pruned.
/// Sigma requires prec and H to be present (MissingComponent otherwise);
/// sigma-prime and psi ignore them.
Verdict check(const TauStructure& s, SentenceId which, const CheckOptions& opts = {});

/// Dividing-line classification of a validated psi-model: longL means the
/// materialized interior level order is as long as the F-surjections permit
/// (|L \ {max}| == c); the Kurepa analog additionally has more branches than
/// c. Throws PreconditionFailed when check(s, psi) fails.
Classification classify(const TauStructure& s, const CheckOptions& opts = {});

}  // namespace kurepa
