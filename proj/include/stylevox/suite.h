#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylevox/corpus.h"
#include "stylevox/persona.h"
#include "stylevox/realizer.h"

namespace stylevox {

struct JobSpec {
  std::size_t mr_id = 0;
  std::vector<PersonalityId> voices;
  std::optional<CombinationStrategy> strategy;  // empty for one voice
  std::uint64_t seed = 0;
  std::uint32_t order_index = 0;
};

struct TestSuite {
  std::vector<JobSpec> singlevoice;  // 5 per MR
  std::vector<JobSpec> multivoice;   // 8 pairs x 2 orders per MR
};

inline constexpr std::uint32_t kOracleOrderIndex = 2;

TestSuite build_test_suite(const std::vector<CorpusRecord>& records, std::uint64_t master_seed,
                           CombinationStrategy strategy = CombinationStrategy::kFirstWins);

// AVERAGE-combined jobs, one per pair and MR, in pair order.
std::vector<JobSpec> build_oracle_jobs(const std::vector<CorpusRecord>& records, std::uint64_t master_seed);

// Singlevoice jobs on a seed stream separate from the test suite, used to
// produce reference texts.
std::vector<JobSpec> build_reference_jobs(const std::vector<CorpusRecord>& records, std::uint64_t master_seed);

// One realized or ingested output.
struct Output {
  std::size_t mr_id = 0;
  std::vector<PersonalityId> voices;
  std::optional<CombinationStrategy> strategy;
  std::optional<std::uint64_t> seed;
  std::string mr_text;  // serialized MR including the convert tags
  std::string text;
};

struct JobFailure {
  std::size_t job_index = 0;
  std::size_t mr_id = 0;
  std::string message;
};

struct GenerationBatch {
  std::vector<Output> outputs;  // job order, failed jobs omitted
  std::vector<JobFailure> failures;
};

// `records` must be indexed by mr_id. workers == 0 means one per core.
GenerationBatch run_generation(const std::vector<CorpusRecord>& records, const std::vector<JobSpec>& jobs,
                               const ProfileSet& profiles, std::size_t workers = 1,
                               const RealizerResources& res = RealizerResources::defaults());

std::string voices_label(const std::vector<PersonalityId>& voices);  // "Agree+Consc"

// JSON Lines with fields mrId, mr, voices, strategy, seed, text.
std::string to_jsonl(const std::vector<Output>& outputs);

// Requires mrId, voices and text per line; strategy and seed are optional.
// Throws SchemaError (with line number) or UnknownMrId.
std::vector<Output> parse_outputs_jsonl(std::string_view text, const std::vector<CorpusRecord>& records);
std::vector<Output> load_external_outputs(const std::filesystem::path& path,
                                          const std::vector<CorpusRecord>& records);

}  // namespace stylevox
