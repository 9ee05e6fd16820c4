#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kurepa/checker.hpp"
#include "kurepa/core.hpp"

namespace kurepa {

/// Exhaustive enumeration of validated psi-models with |P| = c up to the
/// universe-size bound, one canonical representative per isomorphism class,
/// in a fixed order. The feasibility bound is 12 (TooLarge beyond it).
std::vector<TauStructure> enumerate_models(std::size_t max_size, std::size_t c, Mode mode);

constexpr std::size_t kEnumerationBound = 12;

struct SpectrumOptions {
    std::size_t max_size = 6;
    std::size_t c = 2;
    Mode mode = Mode::Literal;
    std::size_t ext_budget = 6;  // must be >= max_size
    bool parallel = true;
};

struct SpectrumReport {
    std::set<std::size_t> sizes_realized;
    std::set<std::size_t> mm_sizes;
    bool trichotomy_ok = true;
    std::optional<std::string> counterexample;  // canonical document of the offender
    std::string counterexample_reason;
};

/// Per-model survey result; the parallel kernel and the serial reference
/// must produce identical vectors.
struct ModelSurvey {
    std::size_t size = 0;
    bool maximal = false;
    bool laws_ok = true;
    std::string reason;
};

std::vector<ModelSurvey> survey_models_serial(const std::vector<TauStructure>& models,
                                              std::size_t c, std::size_t ext_budget, Mode mode);
std::vector<ModelSurvey> survey_models_parallel(const std::vector<TauStructure>& models,
                                                std::size_t c, std::size_t ext_budget, Mode mode);

/// Full sweep: enumerate, survey (budgeted maximality + the classification
/// laws: shortL literal models respect the chain bound, longL means exactly
/// c interior levels, literal mode admits no Kurepa analog), and validate any
/// injected extra structures. The first offender in canonical order is
/// reported.
SpectrumReport spectra_report(const SpectrumOptions& opts,
                              const std::vector<TauStructure>& extras = {});

}  // namespace kurepa
