// stylevox command line: generation, auditing, feature analysis, metrics
// and the end-to-end report pipeline.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <map>

#include "stylevox/analysis.h"
#include "stylevox/corpus.h"
#include "stylevox/error.h"
#include "stylevox/fidelity.h"
#include "stylevox/metrics.h"
#include "stylevox/persona.h"
#include "stylevox/report.h"
#include "stylevox/suite.h"
#include "stylevox/text_util.h"

namespace fs = std::filesystem;
using namespace stylevox;

namespace {

struct Common {
  std::string corpus = std::string(STYLEVOX_DATA_DIR) + "/e2e_test_synthetic.csv";
  std::uint64_t seed = 1;
  std::string profiles;
  std::string strategy = "FIRST_WINS";
  std::string mode = "PAIRED_BY_MR";
  std::string out;
  std::size_t limit = 0;
  std::size_t workers = 1;
  std::string input;
  std::string hyps;
  std::string refs;
  std::string reference_mode = "multi";
};

CombinationStrategy strategy_of(const Common& c) {
  const auto s = parse_strategy(c.strategy);
  if (!s) throw Error(ErrorCode::kInvalidArgument, "unknown strategy '" + c.strategy + "'");
  return *s;
}

CorrelationMode mode_of(const Common& c) {
  const auto m = parse_correlation_mode(c.mode);
  if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + c.mode + "'");
  return *m;
}

ProfileSet profiles_of(const Common& c) {
  return c.profiles.empty() ? ProfileSet::defaults() : ProfileSet::load(c.profiles);
}

std::vector<CorpusRecord> records_of(const Common& c) {
  auto records = load_e2e_csv(c.corpus);
  if (c.limit > 0 && c.limit < records.size()) records.resize(c.limit);
  return records;
}

void emit(const Common& c, const std::string& name, const std::string& content) {
  if (c.out.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(c.out);
  write_text_file(fs::path(c.out) / name, content);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
}

void report_failures(const std::vector<JobFailure>& failures) {
  for (const JobFailure& f : failures) {
    std::cerr << "job " << f.job_index << " (mr " << f.mr_id << "): " << f.message << "\n";
  }
}

int cmd_generate(const Common& c) {
  const auto records = records_of(c);
  const ProfileSet profiles = profiles_of(c);
  const TestSuite suite = build_test_suite(records, c.seed, strategy_of(c));
  std::vector<JobSpec> jobs = suite.singlevoice;
  jobs.insert(jobs.end(), suite.multivoice.begin(), suite.multivoice.end());
  const GenerationBatch batch = run_generation(records, jobs, profiles, c.workers);
  report_failures(batch.failures);
  emit(c, "outputs.jsonl", to_jsonl(batch.outputs));
  return batch.failures.empty() ? 0 : 1;
}

int cmd_audit(const Common& c) {
  require(c.input, "--input");
  const auto records = records_of(c);
  const auto outputs = load_external_outputs(c.input, records);
  std::map<std::string, std::vector<ErrorReport>> by_model;
  std::vector<std::string> order;
  for (const Output& o : outputs) {
    const std::string label = voices_label(o.voices);
    if (!by_model.count(label)) order.push_back(label);
    by_model[label].push_back(audit(o.text, records[o.mr_id].mr));
  }
  std::vector<ErrorRatios> rows;
  for (const std::string& label : order) rows.push_back(aggregate_ratios(by_model[label], records.size(), label));
  emit(c, "errors.csv", errors_csv(rows));
  return 0;
}

int cmd_features(const Common& c) {
  require(c.input, "--input");
  const auto records = records_of(c);
  const auto outputs = load_external_outputs(c.input, records);
  std::map<std::string, std::vector<FeatureCounts>> by_model;
  std::vector<std::string> order;
  for (const Output& o : outputs) {
    const std::string label = voices_label(o.voices);
    if (!by_model.count(label)) order.push_back(label);
    by_model[label].push_back(count_features(o.text));
  }
  std::vector<ModelFeatureStats> rows;
  for (const std::string& label : order) rows.push_back(mean_feature_vector(by_model[label], label));
  emit(c, "features.csv", features_csv(rows));
  return 0;
}

EvaluationInputs inputs_from_file(const Common& c, const std::vector<CorpusRecord>& records, bool support) {
  EvaluationInputs in;
  if (support) {
    std::vector<JobFailure> failures;
    in = realize_support_corpora(records, c.seed, profiles_of(c), c.workers, &failures);
    report_failures(failures);
  }
  for (Output& o : load_external_outputs(c.input, records)) {
    (o.voices.size() == 1 ? in.singlevoice : in.multivoice).push_back(std::move(o));
  }
  return in;
}

int cmd_correlate(const Common& c) {
  require(c.input, "--input");
  const auto records = records_of(c);
  const ReportData data = evaluate_outputs(records, inputs_from_file(c, records, false), mode_of(c));
  if (c.out.empty()) {
    std::cout << "# aggregation\n" << correlation_csv(data.corr_aggregation);
    std::cout << "# pragmatic\n" << correlation_csv(data.corr_pragmatic);
    return 0;
  }
  emit(c, "corr_aggregation.csv", correlation_csv(data.corr_aggregation));
  emit(c, "corr_pragmatic.csv", correlation_csv(data.corr_pragmatic));
  emit(c, "novelty.csv", novelty_csv(data.novelty));
  return 0;
}

int cmd_metrics(const Common& c) {
  require(c.hyps, "--hyps");
  require(c.refs, "--refs");
  std::vector<std::string> hyps;
  for (const std::string& line : split(read_text_file(c.hyps), '\n')) {
    if (!trim(line).empty()) hyps.emplace_back(trim(line));
  }
  ReferenceSets refs(1);
  for (const std::string& line : split(read_text_file(c.refs), '\n')) {
    if (trim(line).empty()) {
      if (!refs.back().empty()) refs.emplace_back();
    } else {
      refs.back().emplace_back(trim(line));
    }
  }
  if (refs.back().empty()) refs.pop_back();
  ReferenceMode rm = ReferenceMode::kMultiReference;
  if (c.reference_mode == "averaged") {
    rm = ReferenceMode::kAveragedSingle;
  } else if (c.reference_mode != "multi") {
    throw Error(ErrorCode::kInvalidArgument, "--reference-mode must be multi or averaged");
  }
  const MetricReport m = evaluate_corpus(hyps, refs, rm);
  emit(c, "metrics.csv", metrics_csv({MetricsRow{"hypotheses", m}}));
  return 0;
}

int cmd_report(const Common& c) {
  require(c.input, "--input");
  require(c.out, "--out");
  const auto records = records_of(c);
  const ReportData data = evaluate_outputs(records, inputs_from_file(c, records, true), mode_of(c));
  emit_report(data, c.out);
  std::cerr << "report written to " << c.out << "\n";
  return 0;
}

int cmd_pipeline(const Common& c) {
  require(c.out, "--out");
  PipelineOptions opt;
  opt.corpus = c.corpus;
  opt.seed = c.seed;
  if (!c.profiles.empty()) opt.profiles = c.profiles;
  opt.strategy = strategy_of(c);
  opt.mode = mode_of(c);
  opt.limit = c.limit;
  opt.workers = c.workers;
  opt.out_dir = c.out;
  const auto start = std::chrono::steady_clock::now();
  const PipelineResult r = run_pipeline(opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report_failures(r.failures);
  std::cerr << r.records << " MRs, " << r.generated << " realizations, " << r.failures.size()
            << " failures, " << format_double(std::round(secs * 100) / 100) << " s\n";
  return r.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personality-driven realizer and stylistic evaluation harness"};
  app.require_subcommand(1);
  Common c;

  const auto corpus_opts = [&](CLI::App* sub) {
    sub->add_option("--corpus", c.corpus, "E2E-style CSV (mr,ref)");
    sub->add_option("--limit", c.limit, "keep only the first N unique MRs");
  };
  const auto gen_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--profiles", c.profiles, "personality profile file");
    sub->add_option("--workers", c.workers, "generation threads (0 = all cores)");
  };

  CLI::App* generate = app.add_subcommand("generate", "realize the singlevoice and multivoice suites as JSON Lines");
  corpus_opts(generate);
  gen_opts(generate);
  generate->add_option("--strategy", c.strategy, "FIRST_WINS, AVERAGE or UNION_HIGH");
  generate->add_option("--out", c.out, "output directory (default stdout)");

  CLI::App* audit_cmd = app.add_subcommand("audit", "semantic error ratios for a JSON Lines output file");
  corpus_opts(audit_cmd);
  audit_cmd->add_option("--input", c.input, "JSON Lines outputs")->required();
  audit_cmd->add_option("--out", c.out, "output directory (default stdout)");

  CLI::App* features = app.add_subcommand("features", "mean stylistic feature counts per voice");
  corpus_opts(features);
  features->add_option("--input", c.input, "JSON Lines outputs")->required();
  features->add_option("--out", c.out, "output directory (default stdout)");

  CLI::App* correlate = app.add_subcommand("correlate", "multivoice vs parent feature correlations");
  corpus_opts(correlate);
  correlate->add_option("--input", c.input, "JSON Lines outputs")->required();
  correlate->add_option("--mode", c.mode, "PAIRED_BY_MR or MEAN_BY_FEATURE");
  correlate->add_option("--out", c.out, "output directory (default stdout)");

  CLI::App* metrics = app.add_subcommand("metrics", "BLEU, NIST and ROUGE-L for plain-text files");
  metrics->add_option("--hyps", c.hyps, "one hypothesis per line")->required();
  metrics->add_option("--refs", c.refs, "references, blank-line separated groups")->required();
  metrics->add_option("--reference-mode", c.reference_mode, "multi or averaged");
  metrics->add_option("--out", c.out, "output directory (default stdout)");

  CLI::App* report = app.add_subcommand("report", "full report for an external JSON Lines output file");
  corpus_opts(report);
  gen_opts(report);
  report->add_option("--input", c.input, "JSON Lines outputs")->required();
  report->add_option("--mode", c.mode, "PAIRED_BY_MR or MEAN_BY_FEATURE");
  report->add_option("--out", c.out, "report directory")->required();

  CLI::App* pipeline = app.add_subcommand("pipeline", "generate, evaluate and write the full report");
  corpus_opts(pipeline);
  gen_opts(pipeline);
  pipeline->add_option("--strategy", c.strategy, "FIRST_WINS, AVERAGE or UNION_HIGH");
  pipeline->add_option("--mode", c.mode, "PAIRED_BY_MR or MEAN_BY_FEATURE");
  pipeline->add_option("--out", c.out, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*generate) return cmd_generate(c);
    if (*audit_cmd) return cmd_audit(c);
    if (*features) return cmd_features(c);
    if (*correlate) return cmd_correlate(c);
    if (*metrics) return cmd_metrics(c);
    if (*report) return cmd_report(c);
    if (*pipeline) return cmd_pipeline(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
