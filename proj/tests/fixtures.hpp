#pragma once

#include <algorithm>
#include <set>
#include <string>

#include "kurepa/checker.hpp"
#include "kurepa/core.hpp"

namespace kurepa::testing {

inline std::set<std::string> tags(const Verdict& v) {
    std::set<std::string> out;
    for (const auto& viol : v.violations) out.insert(viol.tag);
    return out;
}

inline void sort_structure(TauStructure& s) {
    std::sort(s.V.begin(), s.V.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(s.T.begin(), s.T.end());
    s.T.erase(std::unique(s.T.begin(), s.T.end()), s.T.end());
}

/// L = [z, m]; `width` interior nodes at z with empty tree order; the first
/// `branch_count` of them carry one branch each.
inline TauStructure two_level_model(std::size_t c, std::size_t width, std::size_t branch_count,
                                    Mode mode = Mode::Literal) {
    TauStructure s;
    s.mode = mode;
    for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));
    s.L.push_back({"z", LevelKind::Zero, ""});
    s.L.push_back({"m", LevelKind::Max, ""});
    for (std::size_t i = 0; i < width; ++i) s.V.push_back({"v" + std::to_string(i), "z", {}});
    for (std::size_t i = 0; i < branch_count; ++i) {
        std::string bid = "b" + std::to_string(i);
        s.V.push_back({bid, "m",
                       mode == Mode::Surrogate ? std::optional<std::uint64_t>(i) : std::nullopt});
        s.T.push_back({"v" + std::to_string(i), bid});
    }
    for (std::size_t k = 0; k < c; ++k) {
        s.F["z"][s.P[k]] = "z";
        if (width > 0) s.G["z"][s.P[k]] = "v" + std::to_string(std::min(k, width - 1));
    }
    sort_structure(s);
    return s;
}

/// Desk truncation of the full c-ary tree with every maximal chain carried by
/// a branch node: L = [l0, l1, l2(max)], one root, c children, c branches.
inline TauStructure baire_analog(std::size_t c) {
    TauStructure s;
    s.mode = Mode::Literal;
    for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));
    s.L.push_back({"l0", LevelKind::Zero, ""});
    s.L.push_back({"l1", LevelKind::Successor, "l0"});
    s.L.push_back({"l2", LevelKind::Max, ""});
    s.V.push_back({"root", "l0", {}});
    for (std::size_t k = 0; k < c; ++k) {
        std::string ch = "c" + std::to_string(k);
        std::string br = "b" + std::to_string(k);
        s.V.push_back({ch, "l1", {}});
        s.V.push_back({br, "l2", {}});
        s.T.push_back({"root", ch});
        s.T.push_back({"root", br});
        s.T.push_back({ch, br});
    }
    for (std::size_t k = 0; k < c; ++k) {
        s.F["l0"][s.P[k]] = "l0";
        s.F["l1"][s.P[k]] = k == 0 ? "l0" : "l1";
        s.G["l0"][s.P[k]] = "root";
        s.G["l1"][s.P[k]] = "c" + std::to_string(k);
    }
    sort_structure(s);
    return s;
}

/// longL chain model: |L| = c+1, one interior node per level forming a
/// chain, plus labeled branches over the full chain (surrogate mode).
inline TauStructure long_chain(std::size_t c, std::size_t branch_count) {
    TauStructure s;
    s.mode = Mode::Surrogate;
    for (std::size_t k = 0; k < c; ++k) s.P.push_back("p" + std::to_string(k));
    for (std::size_t i = 0; i <= c; ++i) {
        LevelElem le;
        le.id = "l" + std::to_string(i);
        if (i == 0)
            le.kind = LevelKind::Zero;
        else if (i == c)
            le.kind = LevelKind::Max;
        else {
            le.kind = LevelKind::Successor;
            le.succ_of = "l" + std::to_string(i - 1);
        }
        s.L.push_back(le);
    }
    for (std::size_t i = 0; i < c; ++i) {
        s.V.push_back({"v" + std::to_string(i), "l" + std::to_string(i), {}});
        for (std::size_t j = 0; j < i; ++j)
            s.T.push_back({"v" + std::to_string(j), "v" + std::to_string(i)});
    }
    for (std::size_t b = 0; b < branch_count; ++b) {
        std::string bid = "b" + std::to_string(b);
        s.V.push_back({bid, "l" + std::to_string(c), b});
        for (std::size_t j = 0; j < c; ++j) s.T.push_back({"v" + std::to_string(j), bid});
    }
    for (std::size_t i = 0; i < c; ++i) {
        auto& f = s.F["l" + std::to_string(i)];
        auto& g = s.G["l" + std::to_string(i)];
        for (std::size_t k = 0; k < c; ++k) {
            f[s.P[k]] = "l" + std::to_string(std::min(k, i));
            g[s.P[k]] = "v" + std::to_string(i);
        }
    }
    sort_structure(s);
    return s;
}

}  // namespace kurepa::testing
