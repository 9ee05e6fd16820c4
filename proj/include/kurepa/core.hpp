#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kurepa {

enum class ErrorCode {
    MalformedDocument,
    NotInStructure,
    MissingComponent,
    PreconditionFailed,
    InconsistentCarriers,
    BadBudget,
    BadSize,
    WidthExceeded,
    TooLarge,
    NotAFilter,
    NotGraded,
    NotUncountableSurrogate,
    Usage,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Level tags. A Limit tag asserts an elided infinite block of levels in
/// front of the element; Successor carries an explicit witness.
enum class LevelKind { Zero, Successor, Limit, Max };

enum class Mode { Literal, Surrogate };

const char* level_kind_name(LevelKind k);
const char* mode_name(Mode m);

struct LevelElem {
    std::string id;
    LevelKind kind = LevelKind::Zero;
    std::string succ_of;  // present iff kind == Successor

    bool operator==(const LevelElem&) const = default;
};

struct Node {
    std::string id;
    std::string level;
    std::optional<std::uint64_t> label;  // branch identity, max level only

    bool operator==(const Node&) const = default;
};

using PairList = std::vector<std::pair<std::string, std::string>>;
// level id -> (p -> value id); also used for H as branch id -> (level -> branch id)
using WitnessFamily = std::map<std::string, std::map<std::string, std::string>>;

/// Finite structure over the tree-coding vocabulary: urelements P, a tagged
/// level order L, leveled nodes V with tree order T, and the per-level
/// surjection witnesses F (onto level prefixes) and G (onto level node sets).
/// prec and H are only present for the full sentence with an ordered branch
/// set.
struct TauStructure {
    std::vector<std::string> P;
    std::vector<LevelElem> L;  // position == index
    std::vector<Node> V;
    PairList T;
    WitnessFamily F;
    WitnessFamily G;
    std::optional<PairList> prec;
    std::optional<WitnessFamily> H;
    Mode mode = Mode::Literal;

    std::size_t universe_size() const { return P.size() + L.size() + V.size(); }

    bool operator==(const TauStructure&) const = default;
};

struct Violation {
    std::string tag;
    std::vector<std::string> witnesses;
    std::string message;

    bool operator==(const Violation&) const = default;
};

struct Verdict {
    bool ok = true;
    std::vector<Violation> violations;

    bool operator==(const Verdict&) const = default;
};

/// Lookup tables over one structure. Construction validates referential
/// integrity (ids resolve, no cross-carrier reuse) and throws
/// MalformedDocument otherwise; axiom-level properties are left to check().
class StructureIndex {
public:
    explicit StructureIndex(const TauStructure& s);

    const TauStructure& structure() const { return *s_; }

    int level_position(const std::string& level_id) const;       // -1 if unknown
    int node_level_position(const std::string& node_id) const;   // throws NotInStructure
    bool has_node(const std::string& node_id) const;
    const Node& node(const std::string& node_id) const;

    /// Index of the branch level, or -1 when |L| < 2 (a single materialized
    /// level is interior; no branch level exists).
    int branch_level_pos() const { return branch_pos_; }

    const std::vector<std::string>& nodes_at(int level_pos) const;
    const std::vector<std::string>& interior_nodes() const { return interior_nodes_; }
    const std::vector<std::string>& branch_nodes() const { return branch_nodes_; }

    bool t_related(const std::string& x, const std::string& y) const;
    /// T-predecessors of x sorted by (level position, id).
    const std::vector<std::string>& preds(const std::string& node_id) const;
    /// True if some interior node sits strictly T-above x.
    bool has_interior_successor(const std::string& node_id) const;

private:
    const TauStructure* s_;
    std::map<std::string, int> level_pos_;
    std::map<std::string, std::size_t> node_idx_;
    std::set<std::string> p_set_;
    std::vector<std::vector<std::string>> nodes_at_;
    std::vector<std::string> interior_nodes_;
    std::vector<std::string> branch_nodes_;
    std::set<std::pair<std::string, std::string>> t_set_;
    std::map<std::string, std::vector<std::string>> preds_;
    std::map<std::string, bool> has_interior_succ_;
    int branch_pos_ = -1;
    std::vector<std::string> empty_;
};

/// All T-predecessors of x, sorted by level position (a chain in any
/// validated structure).
std::vector<std::string> predecessors(const TauStructure& s, const std::string& node_id);

/// Maximal T-chains among the interior (non-branch-level) nodes, in canonical
/// order. Every branch node of a validated structure covers exactly one of
/// these via predecessors().
std::vector<std::vector<std::string>> materialized_branches(const TauStructure& s);

/// Downward closure {y : T(y,x)} ∪ {x}, sorted by level position.
std::vector<std::string> chain_through(const StructureIndex& ix, const std::string& node_id);

}  // namespace kurepa
