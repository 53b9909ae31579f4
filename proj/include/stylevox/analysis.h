#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylevox/persona.h"

namespace stylevox {

using FeatureCounts = std::array<int, kFeatureCount>;

FeatureCounts count_features(std::string_view utterance);

struct ModelFeatureStats {
  std::string model;
  std::size_t n = 0;
  std::array<double, kFeatureCount> mean{};
};

ModelFeatureStats mean_feature_vector(const std::vector<FeatureCounts>& corpus, std::string model);

// One output's feature values, tagged with its source MR. Values are
// usually integer counts but may be per-MR means.
struct FeatureObservation {
  std::size_t mr_id = 0;
  std::array<double, kFeatureCount> values{};
};

using FeatureCorpus = std::vector<FeatureObservation>;

FeatureObservation observe(std::size_t mr_id, const FeatureCounts& counts);

struct CorrelationResult {
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

enum class CorrelationMode { kPairedByMr, kMeanByFeature };

std::string_view correlation_mode_name(CorrelationMode m);  // "PAIRED_BY_MR"
std::optional<CorrelationMode> parse_correlation_mode(std::string_view token);

// PAIRED_BY_MR pairs outputs for the same MR: one side may hold k outputs
// per MR against a single output on the other, or both sides the same
// count (paired by position). Observations are the class's features of
// every pair, flattened. MEAN_BY_FEATURE correlates the two mean vectors.
CorrelationResult correlate_models(const FeatureCorpus& a, const FeatureCorpus& b, FeatureClass cls,
                                   CorrelationMode mode = CorrelationMode::kPairedByMr);

struct NoveltyThresholds {
  double max_parent_r = 0.5;
};

enum class NoveltyVerdict { kNovel, kNotNovel };

std::string_view verdict_name(NoveltyVerdict v);  // "NOVEL" / "NOT_NOVEL"

// NOVEL when the child correlates below the threshold with both parents
// and, if an oracle is supplied, less with the oracle than the oracle does
// with parent A.
NoveltyVerdict novelty_verdict(double r_child_a, double r_child_b, std::optional<double> r_child_oracle,
                               std::optional<double> r_oracle_a, const NoveltyThresholds& t = {});

struct NoveltyReport {
  CorrelationResult child_a;
  CorrelationResult child_b;
  CorrelationResult a_b;
  std::optional<CorrelationResult> child_oracle;
  std::optional<CorrelationResult> oracle_a;
  NoveltyVerdict verdict = NoveltyVerdict::kNotNovel;
};

NoveltyReport novelty_report(const FeatureCorpus& child, const FeatureCorpus& parent_a,
                             const FeatureCorpus& parent_b, const FeatureCorpus* oracle, FeatureClass cls,
                             CorrelationMode mode = CorrelationMode::kPairedByMr,
                             const NoveltyThresholds& t = {});

}  // namespace stylevox
