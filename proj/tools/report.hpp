#pragma once

// Fit reports and comparison tables: structured (JSON) and text renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mokw/estimation.hpp"
#include "mokw/selection.hpp"

namespace mokw::cli {

inline constexpr const char* kReportSchema = "mokw.fit-report";
inline constexpr const char* kComparisonSchema = "mokw.comparison";
inline constexpr int kSchemaVersion = 1;

struct Provenance {
    std::string dataset;
    std::string source;
    std::uint64_t seed = 0;
    std::size_t starts = 0;
    bool prefer_interior = true;
};

struct FitReport {
    FitResult fit;
    CriteriaSet criteria;
    Provenance provenance;
    std::string format = "json";
};

FitReport make_report(FitResult fit, Provenance provenance, std::string format);

nlohmann::json to_json(const FitReport& r);
/// Throws std::invalid_argument on schema or version mismatch.
FitReport report_from_json(const nlohmann::json& j);

std::string render_text(const FitReport& r);

/// One requested model in a comparison; either a report or an error message.
struct ComparisonEntry {
    ModelSpec spec;
    std::optional<FitReport> report;
    std::string error;
};

nlohmann::json comparison_to_json(const std::vector<ComparisonEntry>& entries, const ComparisonTable* table,
                                  const Provenance& provenance);

/// Models as columns; each parameter shows the estimate, (SE) and the 95% interval,
/// followed by the log-likelihood and the criteria with '*' on the best value.
std::string render_comparison(const std::vector<ComparisonEntry>& entries, const ComparisonTable* table,
                              const Provenance& provenance);

/// "family:baseline[:shape]", e.g. "mokw:exp" or "kwmo:ew:pareto".
ModelSpec parse_model(const std::string& text);
std::string model_key(const ModelSpec& spec);

}  // namespace mokw::cli
