#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stylevox/analysis.h"
#include "stylevox/corpus.h"
#include "stylevox/fidelity.h"
#include "stylevox/metrics.h"
#include "stylevox/persona.h"
#include "stylevox/suite.h"

namespace stylevox {

struct MetricsRow {
  std::string label;
  MetricReport report;
};

// Missing values print as NA.
struct CorrelationRow {
  PersonalityId p1;
  PersonalityId p2;
  std::optional<CorrelationResult> child_p1;
  std::optional<CorrelationResult> child_p2;
  std::optional<CorrelationResult> p1_p2;
};

struct NoveltyRow {
  PersonalityId p1;
  PersonalityId p2;
  FeatureClass cls;
  std::optional<NoveltyReport> report;
};

struct ReportData {
  std::vector<MetricsRow> metrics;
  std::vector<ErrorRatios> errors;
  std::vector<CorrelationRow> corr_aggregation;
  std::vector<CorrelationRow> corr_pragmatic;
  std::vector<ModelFeatureStats> features;
  std::vector<NoveltyRow> novelty;
};

std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string errors_csv(const std::vector<ErrorRatios>& rows);
std::string correlation_csv(const std::vector<CorrelationRow>& rows);
std::string features_csv(const std::vector<ModelFeatureStats>& rows);
std::string novelty_csv(const std::vector<NoveltyRow>& rows);

// Writes metrics.csv, errors.csv, corr_aggregation.csv, corr_pragmatic.csv,
// features.csv, novelty.csv and one grouped-bar SVG per pair and feature
// class (parents vs. the combined voice).
void emit_report(const ReportData& data, const std::filesystem::path& out_dir);

struct EvaluationInputs {
  std::vector<Output> singlevoice;
  std::vector<Output> multivoice;
  std::vector<Output> oracle;      // AVERAGE-combined pairs, optional
  std::vector<Output> references;  // one singlevoice text per (MR, voice)
};

ReportData evaluate_outputs(const std::vector<CorpusRecord>& records, const EvaluationInputs& inputs,
                            CorrelationMode mode = CorrelationMode::kPairedByMr);

struct PipelineOptions {
  std::filesystem::path corpus;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> profiles;
  CombinationStrategy strategy = CombinationStrategy::kFirstWins;
  CorrelationMode mode = CorrelationMode::kPairedByMr;
  std::size_t limit = 0;  // 0 keeps every MR
  std::size_t workers = 1;
  std::filesystem::path out_dir;
};

struct PipelineResult {
  std::size_t records = 0;
  std::size_t generated = 0;
  std::vector<JobFailure> failures;
  ReportData report;
};

// Loads the corpus, generates the suite, oracle and reference corpora,
// evaluates everything and writes outputs.jsonl plus the report files.
PipelineResult run_pipeline(const PipelineOptions& options);

// Reference and oracle corpora for a set of records, as the pipeline makes them.
EvaluationInputs realize_support_corpora(const std::vector<CorpusRecord>& records, std::uint64_t seed,
                                         const ProfileSet& profiles, std::size_t workers,
                                         std::vector<JobFailure>* failures = nullptr);

}  // namespace stylevox
