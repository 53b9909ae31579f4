#include "stylevox/suite.h"

#include <atomic>
#include <json.hpp>
#include <thread>

#include "stylevox/error.h"
#include "stylevox/rng.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

constexpr std::uint64_t kReferenceStream = 0x7265666572656e63ULL;

JobSpec make_job(std::size_t mr_id, std::vector<PersonalityId> voices, std::optional<CombinationStrategy> s,
                 std::uint64_t master, std::uint32_t order) {
  JobSpec job;
  job.mr_id = mr_id;
  job.seed = derive_seed(master, mr_id, voices, order);
  job.voices = std::move(voices);
  job.strategy = s;
  job.order_index = order;
  return job;
}

std::string strategy_field(const std::optional<CombinationStrategy>& s) {
  return s ? std::string(strategy_name(*s)) : std::string("SINGLE");
}

}  // namespace

TestSuite build_test_suite(const std::vector<CorpusRecord>& records, std::uint64_t master_seed,
                           CombinationStrategy strategy) {
  TestSuite suite;
  const auto pairs = enumerate_pairs();
  for (const CorpusRecord& rec : records) {
    for (PersonalityId p : kAllPersonalities) {
      suite.singlevoice.push_back(make_job(rec.mr_id, {p}, std::nullopt, master_seed, 0));
    }
    for (const auto& [a, b] : pairs) {
      suite.multivoice.push_back(make_job(rec.mr_id, {a, b}, strategy, master_seed, 0));
      suite.multivoice.push_back(make_job(rec.mr_id, {b, a}, strategy, master_seed, 1));
    }
  }
  return suite;
}

std::vector<JobSpec> build_oracle_jobs(const std::vector<CorpusRecord>& records, std::uint64_t master_seed) {
  std::vector<JobSpec> jobs;
  for (const CorpusRecord& rec : records) {
    for (const auto& [a, b] : enumerate_pairs()) {
      jobs.push_back(make_job(rec.mr_id, {a, b}, CombinationStrategy::kAverage, master_seed, kOracleOrderIndex));
    }
  }
  return jobs;
}

std::vector<JobSpec> build_reference_jobs(const std::vector<CorpusRecord>& records, std::uint64_t master_seed) {
  const std::uint64_t stream = mix_seed(master_seed, kReferenceStream);
  std::vector<JobSpec> jobs;
  for (const CorpusRecord& rec : records) {
    for (PersonalityId p : kAllPersonalities) jobs.push_back(make_job(rec.mr_id, {p}, std::nullopt, stream, 0));
  }
  return jobs;
}

GenerationBatch run_generation(const std::vector<CorpusRecord>& records, const std::vector<JobSpec>& jobs,
                               const ProfileSet& profiles, std::size_t workers, const RealizerResources& res) {
  std::vector<std::optional<Output>> slots(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};

  const auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const JobSpec& job = jobs[i];
      try {
        if (job.mr_id >= records.size() || records[job.mr_id].mr_id != job.mr_id) {
          throw Error(ErrorCode::kUnknownMrId, std::to_string(job.mr_id));
        }
        const Realization r = generate(records[job.mr_id].mr, job.voices,
                                       job.strategy.value_or(CombinationStrategy::kFirstWins), job.seed,
                                       profiles, res);
        slots[i] = Output{job.mr_id, job.voices, job.strategy, job.seed, serialize_mr(r.mr), r.text};
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(jobs.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  GenerationBatch batch;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (slots[i]) {
      batch.outputs.push_back(std::move(*slots[i]));
    } else {
      batch.failures.push_back(JobFailure{i, jobs[i].mr_id, errors[i]});
    }
  }
  return batch;
}

std::string voices_label(const std::vector<PersonalityId>& voices) {
  std::string out;
  for (PersonalityId p : voices) {
    if (!out.empty()) out += '+';
    out += personality_label(p);
  }
  return out;
}

std::string to_jsonl(const std::vector<Output>& outputs) {
  std::string out;
  for (const Output& o : outputs) {
    nlohmann::ordered_json j;
    j["mrId"] = o.mr_id;
    j["mr"] = o.mr_text;
    nlohmann::ordered_json voices = nlohmann::ordered_json::array();
    for (PersonalityId p : o.voices) voices.push_back(std::string(personality_str(p)));
    j["voices"] = voices;
    j["strategy"] = strategy_field(o.strategy);
    if (o.seed) {
      j["seed"] = *o.seed;
    } else {
      j["seed"] = nullptr;
    }
    j["text"] = o.text;
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

std::vector<Output> parse_outputs_jsonl(std::string_view text, const std::vector<CorpusRecord>& records) {
  std::vector<Output> out;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) -> void {
      throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line_no) + ": " + what);
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) fail("not valid JSON");
    if (!j.is_object()) fail("expected an object");
    if (!j.contains("mrId") || !j["mrId"].is_number_unsigned()) fail("mrId must be a non-negative integer");
    if (!j.contains("voices") || !j["voices"].is_array()) fail("voices must be an array");
    if (!j.contains("text") || !j["text"].is_string()) fail("text must be a string");

    Output o;
    o.mr_id = j["mrId"].get<std::size_t>();
    for (const auto& v : j["voices"]) {
      if (!v.is_string()) fail("voices must hold strings");
      const auto p = parse_personality(v.get<std::string>());
      if (!p) fail("unknown personality " + v.dump());
      o.voices.push_back(*p);
    }
    if (o.voices.empty() || o.voices.size() > 2 || (o.voices.size() == 2 && o.voices[0] == o.voices[1])) {
      fail("voices must name one or two distinct personalities");
    }
    if (j.contains("strategy") && !j["strategy"].is_null()) {
      if (!j["strategy"].is_string()) fail("strategy must be a string");
      const std::string s = j["strategy"].get<std::string>();
      if (s != "SINGLE") {
        const auto parsed = parse_strategy(s);
        if (!parsed) fail("unknown strategy '" + s + "'");
        o.strategy = parsed;
      }
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
      if (!j["seed"].is_number_unsigned()) fail("seed must be a non-negative integer");
      o.seed = j["seed"].get<std::uint64_t>();
    }
    o.text = j["text"].get<std::string>();
    if (o.mr_id >= records.size()) {
      throw Error(ErrorCode::kUnknownMrId, "line " + std::to_string(line_no) + ": mrId " + std::to_string(o.mr_id));
    }
    MeaningRepresentation tagged = records[o.mr_id].mr;
    tagged.style_tags = o.voices;
    o.mr_text = serialize_mr(tagged);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Output> load_external_outputs(const std::filesystem::path& path,
                                          const std::vector<CorpusRecord>& records) {
  return parse_outputs_jsonl(read_text_file(path), records);
}

}  // namespace stylevox
