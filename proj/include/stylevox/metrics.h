#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stylevox {

using Tokens = std::vector<std::string>;

// Lowercase, split . , ! ? ; : into their own tokens, collapse whitespace.
Tokens tokenize(std::string_view text);

// refs[i] holds every reference for hyps[i].
using ReferenceSets = std::vector<std::vector<std::string>>;

struct BleuStats {
  std::array<std::size_t, 4> matches{};  // clipped n-gram matches, n = 1..4
  std::array<std::size_t, 4> totals{};   // hypothesis n-grams
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;  // closest reference length, ties to the shorter
};

BleuStats bleu_stats(const std::vector<std::string>& hyps, const ReferenceSets& refs, int max_n = 4);
double bleu(const std::vector<std::string>& hyps, const ReferenceSets& refs, int max_n = 4);
double nist(const std::vector<std::string>& hyps, const ReferenceSets& refs, int max_n = 5);
double rouge_l(const std::vector<std::string>& hyps, const ReferenceSets& refs);

std::size_t lcs_length(const Tokens& a, const Tokens& b);
// F-measure with beta = 1.2; 0 when the LCS is empty.
double rouge_l_segment(const Tokens& hyp, const Tokens& ref);

struct MetricReport {
  double bleu = 0.0;
  double nist = 0.0;
  double rouge_l = 0.0;
  std::size_t segments = 0;
};

enum class ReferenceMode {
  kMultiReference,  // every reference scored together
  kAveragedSingle,  // one evaluation per reference position, averaged
};

MetricReport evaluate_corpus(const std::vector<std::string>& hyps, const ReferenceSets& refs,
                             ReferenceMode mode = ReferenceMode::kMultiReference);

}  // namespace stylevox
