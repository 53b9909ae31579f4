#include "stylevox/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "stylevox/error.h"
#include "stylevox/stats.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const Tokens& t, std::size_t n) {
  NgramCounts out;
  if (t.size() < n) return out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) ++out[Tokens(t.begin() + i, t.begin() + i + n)];
  return out;
}

void check_corpus(const std::vector<std::string>& hyps, const ReferenceSets& refs) {
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(hyps.size()) + " hypotheses vs " +
                                                std::to_string(refs.size()) + " reference sets");
  }
  if (hyps.empty()) throw Error(ErrorCode::kEmptyCorpus, "no segments");
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].empty()) throw Error(ErrorCode::kEmptyCorpus, "segment " + std::to_string(i) + " has no reference");
  }
}

struct Tokenized {
  std::vector<Tokens> hyps;
  std::vector<std::vector<Tokens>> refs;
};

Tokenized tokenize_all(const std::vector<std::string>& hyps, const ReferenceSets& refs) {
  check_corpus(hyps, refs);
  Tokenized t;
  for (const auto& h : hyps) t.hyps.push_back(tokenize(h));
  for (const auto& set : refs) {
    std::vector<Tokens> toks;
    for (const auto& r : set) toks.push_back(tokenize(r));
    t.refs.push_back(std::move(toks));
  }
  return t;
}

// Max count of each n-gram over one segment's references.
NgramCounts max_ref_counts(const std::vector<Tokens>& refs, std::size_t n) {
  NgramCounts out;
  for (const Tokens& r : refs) {
    for (const auto& [g, c] : ngrams(r, n)) out[g] = std::max(out[g], c);
  }
  return out;
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      flush();
    } else if (c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':') {
      flush();
      out.emplace_back(1, c);
    } else {
      current.push_back(ascii_lower(c));
    }
  }
  flush();
  return out;
}

BleuStats bleu_stats(const std::vector<std::string>& hyps, const ReferenceSets& refs, int max_n) {
  if (max_n < 1 || max_n > 4) throw Error(ErrorCode::kInvalidArgument, "BLEU order must be 1..4");
  const Tokenized t = tokenize_all(hyps, refs);
  BleuStats s;
  for (std::size_t i = 0; i < t.hyps.size(); ++i) {
    const Tokens& h = t.hyps[i];
    s.hyp_length += h.size();
    std::size_t best = t.refs[i][0].size();
    for (const Tokens& r : t.refs[i]) {
      const auto dist = [&](std::size_t len) { return len > h.size() ? len - h.size() : h.size() - len; };
      if (dist(r.size()) < dist(best) || (dist(r.size()) == dist(best) && r.size() < best)) best = r.size();
    }
    s.ref_length += best;
    for (int n = 1; n <= max_n; ++n) {
      const NgramCounts ref_max = max_ref_counts(t.refs[i], static_cast<std::size_t>(n));
      for (const auto& [g, c] : ngrams(h, static_cast<std::size_t>(n))) {
        s.totals[n - 1] += c;
        const auto it = ref_max.find(g);
        if (it != ref_max.end()) s.matches[n - 1] += std::min(c, it->second);
      }
    }
  }
  return s;
}

double bleu(const std::vector<std::string>& hyps, const ReferenceSets& refs, int max_n) {
  const BleuStats s = bleu_stats(hyps, refs, max_n);
  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    if (s.matches[n] == 0 || s.totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]));
  }
  const double c = static_cast<double>(s.hyp_length);
  const double r = static_cast<double>(s.ref_length);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum / max_n);
}

double nist(const std::vector<std::string>& hyps, const ReferenceSets& refs, int max_n) {
  if (max_n < 1) throw Error(ErrorCode::kInvalidArgument, "NIST order must be positive");
  const Tokenized t = tokenize_all(hyps, refs);
  const auto n_max = static_cast<std::size_t>(max_n);

  // Information weights from n-gram counts over every reference.
  std::vector<NgramCounts> ref_counts(n_max + 1);
  std::size_t ref_words = 0;
  for (const auto& set : t.refs) {
    for (const Tokens& r : set) {
      ref_words += r.size();
      for (std::size_t n = 1; n <= n_max; ++n) {
        for (const auto& [g, c] : ngrams(r, n)) ref_counts[n][g] += c;
      }
    }
  }
  const auto info = [&](const Tokens& g) {
    const std::size_t n = g.size();
    const double count = static_cast<double>(ref_counts[n].at(g));
    const double context = n == 1 ? static_cast<double>(ref_words)
                                  : static_cast<double>(ref_counts[n - 1].at(Tokens(g.begin(), g.end() - 1)));
    return std::log2(context / count);
  };

  std::vector<double> info_sum(n_max + 1, 0.0);
  std::vector<std::size_t> hyp_ngrams(n_max + 1, 0);
  double sys_len = 0.0;
  double ref_len = 0.0;
  for (std::size_t i = 0; i < t.hyps.size(); ++i) {
    const Tokens& h = t.hyps[i];
    sys_len += static_cast<double>(h.size());
    double seg_ref = 0.0;
    for (const Tokens& r : t.refs[i]) seg_ref += static_cast<double>(r.size());
    ref_len += seg_ref / static_cast<double>(t.refs[i].size());
    for (std::size_t n = 1; n <= n_max; ++n) {
      const NgramCounts ref_max = max_ref_counts(t.refs[i], n);
      for (const auto& [g, c] : ngrams(h, n)) {
        hyp_ngrams[n] += c;
        const auto it = ref_max.find(g);
        if (it != ref_max.end()) info_sum[n] += info(g) * static_cast<double>(std::min(c, it->second));
      }
    }
  }
  double score = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (hyp_ngrams[n] > 0) score += info_sum[n] / static_cast<double>(hyp_ngrams[n]);
  }
  if (ref_len <= 0.0 || sys_len <= 0.0) return 0.0;
  const double ratio = std::min(sys_len / ref_len, 1.0);
  const double beta = std::log(0.5) / std::pow(std::log(2.0 / 3.0), 2.0);
  const double penalty = std::exp(beta * std::pow(std::log(ratio), 2.0));
  return score * penalty;
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l_segment(const Tokens& hyp, const Tokens& ref) {
  const std::size_t lcs = lcs_length(hyp, ref);
  if (lcs == 0) return 0.0;
  constexpr double kBeta = 1.2;
  const double p = static_cast<double>(lcs) / static_cast<double>(hyp.size());
  const double r = static_cast<double>(lcs) / static_cast<double>(ref.size());
  return (1.0 + kBeta * kBeta) * p * r / (r + kBeta * kBeta * p);
}

double rouge_l(const std::vector<std::string>& hyps, const ReferenceSets& refs) {
  const Tokenized t = tokenize_all(hyps, refs);
  std::vector<double> scores;
  for (std::size_t i = 0; i < t.hyps.size(); ++i) {
    double best = 0.0;
    for (const Tokens& r : t.refs[i]) best = std::max(best, rouge_l_segment(t.hyps[i], r));
    scores.push_back(best);
  }
  return pairwise_sum(scores) / static_cast<double>(scores.size());
}

MetricReport evaluate_corpus(const std::vector<std::string>& hyps, const ReferenceSets& refs, ReferenceMode mode) {
  check_corpus(hyps, refs);
  if (mode == ReferenceMode::kMultiReference) {
    return MetricReport{bleu(hyps, refs), nist(hyps, refs), rouge_l(hyps, refs), hyps.size()};
  }
  const std::size_t k = refs[0].size();
  for (const auto& set : refs) {
    if (set.size() != k) {
      throw Error(ErrorCode::kLengthMismatch, "averaged mode needs the same reference count per segment");
    }
  }
  MetricReport out{0.0, 0.0, 0.0, hyps.size()};
  for (std::size_t j = 0; j < k; ++j) {
    ReferenceSets single;
    for (const auto& set : refs) single.push_back({set[j]});
    out.bleu += bleu(hyps, single);
    out.nist += nist(hyps, single);
    out.rouge_l += rouge_l(hyps, single);
  }
  out.bleu /= static_cast<double>(k);
  out.nist /= static_cast<double>(k);
  out.rouge_l /= static_cast<double>(k);
  return out;
}

}  // namespace stylevox
