#include "stylevox/report.h"

#include <algorithm>
#include <map>
#include <set>

#include "stylevox/error.h"
#include "stylevox/svg.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

std::string cell(const std::optional<CorrelationResult>& c, bool p) {
  if (!c) return "NA";
  return format_double(p ? c->p : c->r);
}

std::string pair_label(PersonalityId a, PersonalityId b) { return voices_label({a, b}); }

bool same_pair(const Output& o, PersonalityId a, PersonalityId b) {
  return o.voices.size() == 2 && ((o.voices[0] == a && o.voices[1] == b) || (o.voices[0] == b && o.voices[1] == a));
}

std::optional<CorrelationResult> try_correlate(const FeatureCorpus& x, const FeatureCorpus& y, FeatureClass cls,
                                               CorrelationMode mode) {
  try {
    return correlate_models(x, y, cls, mode);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct Indexed {
  const Output* output;
  FeatureCounts counts;
};

FeatureCorpus corpus_of(const std::vector<const Indexed*>& items) {
  FeatureCorpus out;
  for (const Indexed* i : items) out.push_back(observe(i->output->mr_id, i->counts));
  return out;
}

ModelFeatureStats stats_of(const std::vector<const Indexed*>& items, const std::string& label) {
  std::vector<FeatureCounts> counts;
  for (const Indexed* i : items) counts.push_back(i->counts);
  return mean_feature_vector(counts, label);
}

}  // namespace

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = "Personality,BLEU,NIST,ROUGE_L\n";
  for (const MetricsRow& r : rows) {
    out += r.label + "," + format_double(r.report.bleu) + "," + format_double(r.report.nist) + "," +
           format_double(r.report.rouge_l) + "\n";
  }
  return out;
}

std::string errors_csv(const std::vector<ErrorRatios>& rows) {
  std::string out = "Personality,Deletions,Repetitions,Hallucinations\n";
  for (const ErrorRatios& r : rows) {
    out += r.model + "," + format_double(r.deletions) + "," + format_double(r.repetitions) + "," +
           format_double(r.hallucinations) + "\n";
  }
  return out;
}

std::string correlation_csv(const std::vector<CorrelationRow>& rows) {
  std::string out = "P1,P2,r_child_p1,p,r_child_p2,p,r_p1_p2,p,n\n";
  for (const CorrelationRow& r : rows) {
    out += std::string(personality_label(r.p1)) + "," + std::string(personality_label(r.p2)) + ",";
    out += cell(r.child_p1, false) + "," + cell(r.child_p1, true) + ",";
    out += cell(r.child_p2, false) + "," + cell(r.child_p2, true) + ",";
    out += cell(r.p1_p2, false) + "," + cell(r.p1_p2, true) + ",";
    out += r.child_p1 ? std::to_string(r.child_p1->n) : std::string("NA");
    out += "\n";
  }
  return out;
}

std::string features_csv(const std::vector<ModelFeatureStats>& rows) {
  std::string out = "model,n";
  for (std::size_t f = 0; f < kFeatureCount; ++f) out += "," + std::string(feature_name(feature_at(f)));
  out += "\n";
  for (const ModelFeatureStats& s : rows) {
    out += s.model + "," + std::to_string(s.n);
    for (double m : s.mean) out += "," + format_double(m);
    out += "\n";
  }
  return out;
}

std::string novelty_csv(const std::vector<NoveltyRow>& rows) {
  std::string out = "P1,P2,class,r_child_p1,r_child_p2,r_p1_p2,r_child_oracle,r_oracle_p1,verdict\n";
  for (const NoveltyRow& r : rows) {
    out += std::string(personality_label(r.p1)) + "," + std::string(personality_label(r.p2)) + "," +
           std::string(feature_class_name(r.cls)) + ",";
    if (!r.report) {
      out += "NA,NA,NA,NA,NA,NA\n";
      continue;
    }
    const NoveltyReport& n = *r.report;
    out += format_double(n.child_a.r) + "," + format_double(n.child_b.r) + "," + format_double(n.a_b.r) + ",";
    out += cell(n.child_oracle, false) + "," + cell(n.oracle_a, false) + ",";
    out += std::string(verdict_name(n.verdict)) + "\n";
  }
  return out;
}

void emit_report(const ReportData& data, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  write_text_file(out_dir / "metrics.csv", metrics_csv(data.metrics));
  write_text_file(out_dir / "errors.csv", errors_csv(data.errors));
  write_text_file(out_dir / "corr_aggregation.csv", correlation_csv(data.corr_aggregation));
  write_text_file(out_dir / "corr_pragmatic.csv", correlation_csv(data.corr_pragmatic));
  write_text_file(out_dir / "features.csv", features_csv(data.features));
  write_text_file(out_dir / "novelty.csv", novelty_csv(data.novelty));

  const auto find_stats = [&](const std::string& label) -> const ModelFeatureStats* {
    for (const ModelFeatureStats& s : data.features) {
      if (s.model == label) return &s;
    }
    return nullptr;
  };
  for (const auto* rows : {&data.corr_aggregation, &data.corr_pragmatic}) {
    const FeatureClass cls = rows == &data.corr_aggregation ? FeatureClass::kAggregation : FeatureClass::kPragmatic;
    for (const CorrelationRow& row : *rows) {
      const std::string l1(personality_label(row.p1));
      const std::string l2(personality_label(row.p2));
      const std::string child = pair_label(row.p1, row.p2);
      const ModelFeatureStats* s1 = find_stats(l1);
      const ModelFeatureStats* s2 = find_stats(l2);
      const ModelFeatureStats* sc = find_stats(child);
      if (!s1 || !s2 || !sc) continue;
      std::vector<std::string> categories;
      std::vector<BarSeries> series{{l1, {}}, {l2, {}}, {child, {}}};
      for (FeatureId f : features_of(cls)) {
        categories.emplace_back(feature_name(f));
        series[0].values.push_back(s1->mean[index_of(f)]);
        series[1].values.push_back(s2->mean[index_of(f)]);
        series[2].values.push_back(sc->mean[index_of(f)]);
      }
      const std::string title = child + " vs. parents: " + std::string(feature_class_name(cls)) + " operations";
      const std::string file = "fig_" + std::string(feature_class_name(cls)) + "_" + l1 + "_" + l2 + ".svg";
      write_text_file(out_dir / file, grouped_bar_svg(title, categories, series));
    }
  }
}

ReportData evaluate_outputs(const std::vector<CorpusRecord>& records, const EvaluationInputs& in,
                            CorrelationMode mode) {
  if (records.empty()) throw Error(ErrorCode::kEmptyCorpus, "no corpus records");
  const auto check_id = [&](const Output& o) {
    if (o.mr_id >= records.size()) throw Error(ErrorCode::kUnknownMrId, std::to_string(o.mr_id));
  };
  std::map<std::pair<std::size_t, PersonalityId>, const std::string*> refs;
  for (const Output& o : in.references) {
    check_id(o);
    if (o.voices.size() == 1) refs.emplace(std::make_pair(o.mr_id, o.voices[0]), &o.text);
  }

  const auto index = [&](const std::vector<Output>& outs) {
    std::vector<Indexed> v;
    for (const Output& o : outs) {
      check_id(o);
      v.push_back(Indexed{&o, count_features(o.text)});
    }
    return v;
  };
  const std::vector<Indexed> singles = index(in.singlevoice);
  const std::vector<Indexed> multis = index(in.multivoice);
  const std::vector<Indexed> oracles = index(in.oracle);

  const auto select = [](const std::vector<Indexed>& items, auto pred) {
    std::vector<const Indexed*> out;
    for (const Indexed& i : items) {
      if (pred(*i.output)) out.push_back(&i);
    }
    return out;
  };

  ReportData data;
  const auto pairs = enumerate_pairs();

  // Metrics.
  const auto ref_text = [&](std::size_t mr_id, PersonalityId p) -> const std::string& {
    const auto it = refs.find({mr_id, p});
    if (it == refs.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no reference for MR " + std::to_string(mr_id) + " voice " +
                                                   std::string(personality_str(p)));
    }
    return *it->second;
  };
  const auto add_metrics = [&](const std::string& label, const std::vector<const Indexed*>& items, ReferenceMode rm) {
    if (items.empty()) return;
    std::vector<std::string> hyps;
    ReferenceSets sets;
    for (const Indexed* i : items) {
      hyps.push_back(i->output->text);
      std::vector<std::string> set;
      for (PersonalityId p : i->output->voices) set.push_back(ref_text(i->output->mr_id, p));
      sets.push_back(std::move(set));
    }
    data.metrics.push_back(MetricsRow{label, evaluate_corpus(hyps, sets, rm)});
  };
  if (!refs.empty()) {
    const auto all = [](const Output&) { return true; };
    add_metrics("SingleVoice", select(singles, all), ReferenceMode::kMultiReference);
    add_metrics("MultiVoice", select(multis, all), ReferenceMode::kMultiReference);
    add_metrics("MultiVoice-AvgRef", select(multis, all), ReferenceMode::kAveragedSingle);
    add_metrics("MultiVoice-Order1", select(multis, [](const Output& o) { return o.voices[0] < o.voices[1]; }),
                ReferenceMode::kMultiReference);
    add_metrics("MultiVoice-Order2", select(multis, [](const Output& o) { return o.voices[0] > o.voices[1]; }),
                ReferenceMode::kMultiReference);
  }

  // Semantic errors.
  const auto ratios = [&](const std::vector<const Indexed*>& items, const std::string& label) {
    std::vector<ErrorReport> reports;
    for (const Indexed* i : items) reports.push_back(audit(i->output->text, records[i->output->mr_id].mr));
    return aggregate_ratios(reports, records.size(), label);
  };
  std::map<PersonalityId, std::vector<const Indexed*>> by_voice;
  for (PersonalityId p : kAllPersonalities) {
    by_voice[p] = select(singles, [p](const Output& o) { return o.voices.size() == 1 && o.voices[0] == p; });
    if (!by_voice[p].empty()) data.errors.push_back(ratios(by_voice[p], std::string(personality_label(p))));
  }
  std::map<std::pair<PersonalityId, PersonalityId>, std::vector<const Indexed*>> by_pair;
  std::map<std::pair<PersonalityId, PersonalityId>, std::vector<const Indexed*>> oracle_by_pair;
  for (const auto& [a, b] : pairs) {
    by_pair[{a, b}] = select(multis, [a = a, b = b](const Output& o) { return same_pair(o, a, b); });
    oracle_by_pair[{a, b}] = select(oracles, [a = a, b = b](const Output& o) { return same_pair(o, a, b); });
    if (!by_pair[{a, b}].empty()) data.errors.push_back(ratios(by_pair[{a, b}], pair_label(a, b)));
  }

  // Feature statistics.
  for (PersonalityId p : kAllPersonalities) {
    if (!by_voice[p].empty()) data.features.push_back(stats_of(by_voice[p], std::string(personality_label(p))));
  }
  for (const auto& [a, b] : pairs) {
    if (!by_pair[{a, b}].empty()) data.features.push_back(stats_of(by_pair[{a, b}], pair_label(a, b)));
  }
  for (const auto& [a, b] : pairs) {
    if (!oracle_by_pair[{a, b}].empty()) {
      data.features.push_back(stats_of(oracle_by_pair[{a, b}], pair_label(a, b) + "/AVERAGE"));
    }
  }

  // Correlations and novelty.
  for (const auto& [a, b] : pairs) {
    const FeatureCorpus child = corpus_of(by_pair[{a, b}]);
    const FeatureCorpus pa = corpus_of(by_voice[a]);
    const FeatureCorpus pb = corpus_of(by_voice[b]);
    const FeatureCorpus oracle = corpus_of(oracle_by_pair[{a, b}]);
    for (FeatureClass cls : {FeatureClass::kAggregation, FeatureClass::kPragmatic}) {
      CorrelationRow row{a, b, try_correlate(child, pa, cls, mode), try_correlate(child, pb, cls, mode),
                         try_correlate(pa, pb, cls, mode)};
      (cls == FeatureClass::kAggregation ? data.corr_aggregation : data.corr_pragmatic).push_back(row);
      NoveltyRow nrow{a, b, cls, std::nullopt};
      try {
        nrow.report = novelty_report(child, pa, pb, oracle.empty() ? nullptr : &oracle, cls, mode);
      } catch (const Error&) {
      }
      data.novelty.push_back(nrow);
    }
  }
  return data;
}

EvaluationInputs realize_support_corpora(const std::vector<CorpusRecord>& records, std::uint64_t seed,
                                         const ProfileSet& profiles, std::size_t workers,
                                         std::vector<JobFailure>* failures) {
  EvaluationInputs in;
  GenerationBatch refs = run_generation(records, build_reference_jobs(records, seed), profiles, workers);
  GenerationBatch oracle = run_generation(records, build_oracle_jobs(records, seed), profiles, workers);
  in.references = std::move(refs.outputs);
  in.oracle = std::move(oracle.outputs);
  if (failures) {
    failures->insert(failures->end(), refs.failures.begin(), refs.failures.end());
    failures->insert(failures->end(), oracle.failures.begin(), oracle.failures.end());
  }
  return in;
}

PipelineResult run_pipeline(const PipelineOptions& options) {
  std::vector<CorpusRecord> records = load_e2e_csv(options.corpus);
  if (options.limit > 0 && options.limit < records.size()) records.resize(options.limit);
  const ProfileSet profiles = options.profiles ? ProfileSet::load(*options.profiles) : ProfileSet::defaults();

  PipelineResult result;
  result.records = records.size();
  const TestSuite suite = build_test_suite(records, options.seed, options.strategy);
  GenerationBatch single = run_generation(records, suite.singlevoice, profiles, options.workers);
  GenerationBatch multi = run_generation(records, suite.multivoice, profiles, options.workers);
  EvaluationInputs in = realize_support_corpora(records, options.seed, profiles, options.workers, &result.failures);
  result.failures.insert(result.failures.end(), single.failures.begin(), single.failures.end());
  result.failures.insert(result.failures.end(), multi.failures.begin(), multi.failures.end());
  in.singlevoice = std::move(single.outputs);
  in.multivoice = std::move(multi.outputs);
  result.generated = in.singlevoice.size() + in.multivoice.size();

  result.report = evaluate_outputs(records, in, options.mode);
  emit_report(result.report, options.out_dir);
  std::vector<Output> all = in.singlevoice;
  all.insert(all.end(), in.multivoice.begin(), in.multivoice.end());
  write_text_file(options.out_dir / "outputs.jsonl", to_jsonl(all));
  return result;
}

}  // namespace stylevox
