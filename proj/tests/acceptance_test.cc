// Acceptance criteria: prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.h"
#include "stylevox/analysis.h"
#include "stylevox/corpus.h"
#include "stylevox/fidelity.h"
#include "stylevox/metrics.h"
#include "stylevox/persona.h"
#include "stylevox/realizer.h"
#include "stylevox/report.h"
#include "stylevox/rng.h"
#include "stylevox/stats.h"
#include "stylevox/suite.h"
#include "stylevox/text_util.h"
#include "t_oracle.h"

using namespace stylevox;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const fs::path kCorpus = fs::path(STYLEVOX_DATA_DIR) / "e2e_test_synthetic.csv";

int at(const FeatureCounts& c, FeatureId f) { return c[index_of(f)]; }

void ac1(Outcome& o) {
  using F = FeatureId;
  count_features("warm up");
  double worst = 0.0;
  FeatureCounts row1{};
  FeatureCounts row6{};
  for (int i = 0; i < 10; ++i) {
    auto t0 = Clock::now();
    row1 = count_features(fixtures::kDisagreeableText);
    worst = std::max(worst, ms_since(t0));
    t0 = Clock::now();
    row6 = count_features(fixtures::kUnconscientiousText);
    worst = std::max(worst, ms_since(t0));
  }
  o.expect(at(row1, F::kPeriod) == 5, "row1 PERIOD=" + std::to_string(at(row1, F::kPeriod)));
  o.expect(at(row1, F::kExpletives) == 2, "row1 EXPLETIVES=" + std::to_string(at(row1, F::kExpletives)));
  o.expect(at(row1, F::kAlsoCue) == 1, "row1 ALSO_CUE=" + std::to_string(at(row1, F::kAlsoCue)));
  o.expect(at(row6, F::kExpletives) == 3, "row6 EXPLETIVES=" + std::to_string(at(row6, F::kExpletives)));
  o.expect(at(row6, F::kInitialRejection) == 1,
           "row6 INITIAL_REJECTION=" + std::to_string(at(row6, F::kInitialRejection)));
  o.expect(at(row6, F::kAlsoCue) == 3, "row6 ALSO_CUE=" + std::to_string(at(row6, F::kAlsoCue)));
  o.expect(at(row6, F::kAckYeah) == 1, "row6 ACK_YEAH=" + std::to_string(at(row6, F::kAckYeah)));
  o.expect(worst < 1.0, "slowest call " + std::to_string(worst) + " ms");
  o.detail << "slowest call " << worst << " ms";
}

void ac2(Outcome& o) {
  const auto mr = parse_mr(fixtures::kBrownsMr);
  const ErrorReport clean = audit(fixtures::kDisagrConscText, mr);
  o.expect(clean.clean(), "row3 not clean");
  const ErrorReport r5 = audit(fixtures::kDisagrExtraText, mr);
  o.expect(r5.deletions == std::vector<SlotName>{SlotName::kFamilyFriendly}, "row5 deletions");
  o.expect(r5.repetitions.size() == 1 && r5.repetitions[0].first == SlotName::kPriceRange, "row5 repetitions");
  o.expect(r5.hallucinations.empty(), "row5 hallucinations");
  o.detail << "row3 clean, row5 deletion familyFriendly + repetition priceRange";
}

void ac3(Outcome& o) {
  const auto records = load_e2e_csv(kCorpus);
  const TestSuite suite = build_test_suite(records, 1);
  const auto pairs = enumerate_pairs();
  o.expect(records.size() == 278, "records=" + std::to_string(records.size()));
  o.expect(suite.singlevoice.size() == 1390, "singlevoice=" + std::to_string(suite.singlevoice.size()));
  o.expect(suite.multivoice.size() == 4448, "multivoice=" + std::to_string(suite.multivoice.size()));
  o.expect(pairs.size() == 8, "pairs=" + std::to_string(pairs.size()));
  for (auto [a, b] : pairs) o.expect(antonym(a) != b, "antonym pair enumerated");
  for (const auto& j : suite.multivoice) {
    if (antonym(j.voices[0]) == j.voices[1]) {
      o.expect(false, "antonym job");
      break;
    }
  }
  o.detail << records.size() << " MRs, " << suite.singlevoice.size() << " singlevoice, " << suite.multivoice.size()
           << " multivoice, " << pairs.size() << " pairs";
}

double brute_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  long double mx = 0;
  long double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

void ac4(Outcome& o) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> noise;
  double worst_r = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 3 + gen() % 498;
    const double rho = std::uniform_real_distribution<double>(-1.0, 1.0)(gen);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = noise(gen) * 10.0 + 5.0;
      y[i] = rho * x[i] + noise(gen);
    }
    worst_r = std::max(worst_r, std::abs(pearson(x, y) - brute_pearson(x, y)));
  }
  o.expect(worst_r <= 1e-12, "pearson deviation " + std::to_string(worst_r));

  double worst_p = 0.0;
  for (double r : {0.01, 0.1, 0.5, 0.9}) {
    for (std::size_t n : {5u, 19u, 278u, 2780u}) {
      worst_p = std::max(worst_p, std::abs(pearson_significance(r, n) - testing::t_two_tailed_p(r, n)));
    }
  }
  o.expect(worst_p <= 1e-6, "p deviation " + std::to_string(worst_p));
  const double p = pearson_significance(0.01, 2780);
  o.expect(std::abs(p - 0.598) <= 0.01, "p(0.01, 2780)=" + std::to_string(p));
  o.detail << "max |dr| " << worst_r << ", max |dp| " << worst_p << ", p(0.01, 2780) = " << p;
}

void ac5(Outcome& o) {
  const std::vector<std::string> same = {"the cat sat on the mat .", "it is a pub near the river !"};
  const ReferenceSets same_refs = {{same[0]}, {same[1]}};
  o.expect(std::abs(bleu(same, same_refs) - 1.0) <= 1e-9, "identical BLEU");
  o.expect(std::abs(rouge_l(same, same_refs) - 1.0) <= 1e-9, "identical ROUGE-L");

  const BleuStats clip = bleu_stats({"the the the the"}, {{"the cat"}});
  o.expect(clip.matches[0] == 1 && clip.totals[0] == 4, "clipped unigram " + std::to_string(clip.matches[0]) + "/4");
  o.expect(bleu({"the the the the"}, {{"the cat"}}) == 0.0, "clipped BLEU not 0");

  const std::vector<std::string> hyps = {"the cat sat on the mat", "it is a pub", "a pub near the river"};
  const ReferenceSets refs = {{"the cat is on the mat"}, {"it is a pub"}, {"a pub by the river"}};
  const double hand_bleu = std::pow(13.0 / 15.0 * 8.0 / 12.0 * 3.0 / 9.0 * 1.0 / 6.0, 0.25);
  const double b = bleu(hyps, refs);
  o.expect(std::abs(b - hand_bleu) <= 1e-9, "mini BLEU " + std::to_string(b));
  const double rouge = rouge_l({"the cat sat on mat"}, {{"the cat on the mat"}});
  o.expect(std::abs(rouge - 0.8) <= 1e-9, "ROUGE-L example " + std::to_string(rouge));
  const double nist_desk = 3.2409961685018556;
  const double n = nist({"the cat sat on the mat", "a pub near the river"}, {{"the cat sat on the mat"}, {"a pub by the river"}});
  o.expect(std::abs(n - nist_desk) <= 1e-9, "NIST " + std::to_string(n));
  o.detail << "BLEU " << b << ", ROUGE-L " << rouge << ", NIST " << n;
}

void ac6(Outcome& o) {
  const auto records = load_e2e_csv(kCorpus);
  std::size_t generated = 0;
  std::size_t failures = 0;
  std::size_t deletions = 0;
  std::size_t repetitions = 0;
  std::size_t hallucinations = 0;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const TestSuite suite = build_test_suite(records, seed);
    std::vector<JobSpec> jobs = suite.singlevoice;
    jobs.insert(jobs.end(), suite.multivoice.begin(), suite.multivoice.end());
    const GenerationBatch batch = run_generation(records, jobs, ProfileSet::defaults(), 1);
    failures += batch.failures.size();
    for (const Output& out : batch.outputs) {
      const ErrorReport r = audit(out.text, records[out.mr_id].mr);
      deletions += r.deletions.size();
      repetitions += r.repetitions.size();
      hallucinations += r.hallucinations.size();
      ++generated;
    }
  }
  o.expect(generated == 278 * 21 * 3, "generated " + std::to_string(generated));
  o.expect(failures == 0, std::to_string(failures) + " generation failures");
  o.expect(deletions == 0, std::to_string(deletions) + " deletions");
  o.expect(repetitions == 0, std::to_string(repetitions) + " repetitions");
  o.expect(hallucinations == 0, std::to_string(hallucinations) + " hallucinations");
  o.detail << generated << " generations audited";
}

void ac7(Outcome& o) {
  const auto mr = parse_mr(fixtures::kBrownsMr);
  double worst = INFINITY;
  std::string worst_name;
  for (FeatureId f : features_of(FeatureClass::kPragmatic)) {
    StyleProfile high = StyleProfile::neutral("high");
    StyleProfile low = StyleProfile::neutral("low");
    high.set(f, ParamLevel::kHigh);
    low.set(f, ParamLevel::kLow);
    double sum_high = 0.0;
    double sum_low = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      sum_high += at(count_features(realize_with_profile(mr, high, seed)), f);
      sum_low += at(count_features(realize_with_profile(mr, low, seed)), f);
    }
    const double ratio = sum_low > 0.0 ? sum_high / sum_low : (sum_high > 0.0 ? INFINITY : 0.0);
    if (ratio < worst) {
      worst = ratio;
      worst_name = std::string(feature_name(f));
    }
    o.expect(ratio >= 3.0, std::string(feature_name(f)) + " ratio " + std::to_string(ratio));
  }
  o.detail << "smallest HIGH/LOW ratio " << worst << " (" << worst_name << ")";
}

// Per-MR mean feature vectors over `k` seeds for one voice configuration.
FeatureCorpus mean_by_mr(const std::vector<CorpusRecord>& records, const StyleProfile& profile, std::uint64_t base,
                         int k) {
  FeatureCorpus out;
  for (const CorpusRecord& rec : records) {
    FeatureObservation obs;
    obs.mr_id = rec.mr_id;
    for (int s = 0; s < k; ++s) {
      const FeatureCounts c = count_features(realize_with_profile(rec.mr, profile, mix_seed(base, rec.mr_id * 1000 + s)));
      for (std::size_t f = 0; f < kFeatureCount; ++f) obs.values[f] += c[f];
    }
    for (double& v : obs.values) v /= k;
    out.push_back(obs);
  }
  return out;
}

void ac8(Outcome& o) {
  const auto records = load_e2e_csv(kCorpus);
  constexpr int kSeeds = 100;
  std::map<PersonalityId, FeatureCorpus> parents;
  for (PersonalityId p : kAllPersonalities) {
    parents[p] = mean_by_mr(records, default_profile(p), 100 + static_cast<std::uint64_t>(p), kSeeds);
  }
  double worst = 1.0;
  for (auto [a, b] : enumerate_pairs()) {
    const StyleProfile avg = combine_profiles(default_profile(a), default_profile(b), CombinationStrategy::kAverage);
    const FeatureCorpus child = mean_by_mr(records, avg, 200 + 10 * static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b), kSeeds);
    FeatureCorpus mixture = parents[a];
    for (std::size_t i = 0; i < mixture.size(); ++i) {
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        mixture[i].values[f] = 0.5 * (parents[a][i].values[f] + parents[b][i].values[f]);
      }
    }
    for (FeatureClass cls : {FeatureClass::kAggregation, FeatureClass::kPragmatic}) {
      const CorrelationResult r = correlate_models(child, mixture, cls, CorrelationMode::kPairedByMr);
      worst = std::min(worst, r.r);
      o.expect(r.r >= 0.9, voices_label({a, b}) + " " + std::string(feature_class_name(cls)) + " r=" + std::to_string(r.r));
    }
  }
  const NoveltyVerdict v = novelty_verdict(0.23, 0.33, std::nullopt, std::nullopt);
  o.expect(v == NoveltyVerdict::kNovel, "published row verdict " + std::string(verdict_name(v)));
  o.detail << "min r(AVERAGE child, parent mixture) " << worst << " over 8 pairs x 2 classes, per-MR means of " << kSeeds
           << " seeds; (0.23, 0.33) -> "
           << verdict_name(v);
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) out[e.path().filename().string()] = read_text_file(e.path());
  }
  return out;
}

void ac9(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "stylevox_acceptance_pipeline";
  fs::remove_all(root);
  double slowest = 0.0;
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* name : {"run1", "run2"}) {
    PipelineOptions opt;
    opt.corpus = kCorpus;
    opt.seed = 1;
    opt.workers = 1;
    opt.out_dir = root / name;
    const auto t0 = Clock::now();
    const PipelineResult r = run_pipeline(opt);
    slowest = std::max(slowest, ms_since(t0) / 1000.0);
    o.expect(r.records == 278, "records " + std::to_string(r.records));
    o.expect(r.failures.empty(), "generation failures");
    runs.push_back(snapshot(opt.out_dir));
  }
  o.expect(runs[0] == runs[1], "report directories differ");
  o.expect(runs[0].count("outputs.jsonl") && runs[0].count("metrics.csv") && runs[0].count("corr_pragmatic.csv"),
           "missing report files");
  o.expect(slowest < 60.0, "slowest run " + std::to_string(slowest) + " s");
  o.detail << runs[0].size() << " files byte-identical, slowest run " << slowest << " s";
  fs::remove_all(root);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1 golden feature fixtures", ac1},
      {"AC2 golden fidelity fixtures", ac2},
      {"AC3 suite cardinality", ac3},
      {"AC4 statistics oracle equivalence", ac4},
      {"AC5 metric correctness", ac5},
      {"AC6 realizer semantic closure", ac6},
      {"AC7 stylistic controllability", ac7},
      {"AC8 interpolation vs novelty", ac8},
      {"AC9 pipeline determinism and runtime", ac9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
