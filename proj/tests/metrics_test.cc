#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stylevox/metrics.h"
#include "test_util.h"

using namespace stylevox;
using stylevox::testing::error_code_of;

namespace {

const std::vector<std::string> kMiniHyps = {"the cat sat on the mat", "it is a pub", "a pub near the river"};
const ReferenceSets kMiniRefs = {{"the cat is on the mat"}, {"it is a pub"}, {"a pub by the river"}};

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("It is a pub.") == Tokens{"it", "is", "a", "pub", "."});
  CHECK(tokenize("").empty());
  CHECK(tokenize("you know!") == Tokens{"you", "know", "!"});
  CHECK(tokenize("  Oh,  well;ok:  fine?") == Tokens{"oh", ",", "well", ";", "ok", ":", "fine", "?"});
  for (const std::string s : {"Browns Cambridge is a pub, also it's cheap!", "A. B, c", "x"}) {
    const Tokens t = tokenize(s);
    std::string joined;
    for (const auto& tok : t) joined += (joined.empty() ? "" : " ") + tok;
    CHECK(tokenize(joined) == t);
  }
}

TEST_CASE("identical corpora score 1") {
  const std::vector<std::string> hyps = {"the cat sat on the mat .", "it is a pub near the river , you know !"};
  const ReferenceSets refs = {{hyps[0]}, {hyps[1]}};
  CHECK(bleu(hyps, refs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rouge_l(hyps, refs) == doctest::Approx(1.0).epsilon(1e-12));
  const MetricReport r = evaluate_corpus(hyps, refs);
  CHECK(r.bleu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rouge_l == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.segments == 2);
  // A second reference that contains the hypothesis verbatim.
  const ReferenceSets two = {{"a dog", hyps[0]}, {hyps[1], "nothing alike here at all"}};
  CHECK(bleu(hyps, two) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rouge_l(hyps, two) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("clipped counts") {
  const BleuStats s = bleu_stats({"the the the the"}, {{"the cat"}});
  CHECK(s.matches[0] == 1);
  CHECK(s.totals[0] == 4);
  CHECK(s.matches[1] == 0);
  CHECK(bleu({"the the the the"}, {{"the cat"}}) == 0.0);
}

TEST_CASE("mini corpus BLEU") {
  const BleuStats s = bleu_stats(kMiniHyps, kMiniRefs);
  CHECK(s.matches == std::array<std::size_t, 4>{13, 8, 3, 1});
  CHECK(s.totals == std::array<std::size_t, 4>{15, 12, 9, 6});
  CHECK(s.hyp_length == 15);
  CHECK(s.ref_length == 15);
  const double hand = std::pow(13.0 / 15.0 * 8.0 / 12.0 * 3.0 / 9.0 * 1.0 / 6.0, 0.25);
  CHECK(near(bleu(kMiniHyps, kMiniRefs), hand));
  CHECK(near(bleu(kMiniHyps, kMiniRefs), 0.42327447749128855));
}

TEST_CASE("brevity penalty uses the closest reference") {
  const BleuStats s = bleu_stats({"a b c"}, {{"a b c d e", "a b", "a b c d"}});
  CHECK(s.ref_length == 2);
  const BleuStats tie = bleu_stats({"a b c"}, {{"a b c d", "a b"}});
  CHECK(tie.ref_length == 2);
  const double short_hyp = bleu({"a b c d e f"}, {{"a b c d e f g h"}});
  CHECK(near(short_hyp, std::exp(1.0 - 8.0 / 6.0)));
}

TEST_CASE("mini corpus ROUGE-L") {
  CHECK(lcs_length(Tokens{"the", "cat", "sat", "on", "mat"}, Tokens{"the", "cat", "on", "the", "mat"}) == 4);
  CHECK(near(rouge_l_segment(Tokens{"the", "cat", "sat", "on", "mat"}, Tokens{"the", "cat", "on", "the", "mat"}), 0.8));
  CHECK(near(rouge_l({"the cat sat on mat"}, {{"the cat on the mat"}}), 0.8));
  CHECK(near(rouge_l(kMiniHyps, kMiniRefs), (5.0 / 6.0 + 1.0 + 0.8) / 3.0));
  CHECK(rouge_l({"a b c"}, {{"x y z"}}) == 0.0);
  CHECK(rouge_l_segment(Tokens{}, Tokens{"a"}) == 0.0);
}

TEST_CASE("NIST against the desk implementation") {
  CHECK(near(nist({"the cat sat on the mat", "a pub near the river"},
                  {{"the cat sat on the mat"}, {"a pub by the river"}}),
             3.2409961685018556));
  CHECK(near(nist(kMiniHyps, kMiniRefs), 3.2152199745634409));
  CHECK(nist({"a b c"}, {{"x y z"}}) == 0.0);
}

TEST_CASE("NIST never rises when a match becomes unknown") {
  const ReferenceSets refs = {{"the cat sat on the mat"}, {"a pub by the river"}};
  const std::vector<std::string> base = {"the cat sat on the mat", "a pub near the river"};
  const double s0 = nist(base, refs);
  const std::vector<std::string> variants[] = {
      {"the cat sat on the zzz", "a pub near the river"},
      {"qqq cat sat on the mat", "a pub near the river"},
      {"the cat sat on the mat", "a pub near the qqq"},
  };
  for (const auto& v : variants) CHECK(nist(v, refs) <= s0);
}

TEST_CASE("metric errors") {
  CHECK(error_code_of([] { bleu({"a"}, {}); }) == ErrorCode::kLengthMismatch);
  CHECK(error_code_of([] { nist({}, {}); }) == ErrorCode::kEmptyCorpus);
  CHECK(error_code_of([] { rouge_l({"a"}, {{}}); }) == ErrorCode::kEmptyCorpus);
  CHECK(error_code_of([] { evaluate_corpus({"a", "b"}, {{"a"}}); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("metric properties on random corpora") {
  std::mt19937 gen(17);
  const std::vector<std::string> vocab = {"it", "is", "a", "pub", "near", "the", "river", ",", ".", "cheap", "and"};
  const auto sentence = [&] {
    std::string s;
    const int len = 3 + static_cast<int>(gen() % 10);
    for (int i = 0; i < len; ++i) s += (i ? " " : "") + vocab[gen() % vocab.size()];
    return s;
  };
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t n = 2 + gen() % 6;
    std::vector<std::string> hyps;
    ReferenceSets refs;
    for (std::size_t i = 0; i < n; ++i) {
      hyps.push_back(sentence());
      refs.push_back({sentence()});
    }
    const double b = bleu(hyps, refs);
    const double nst = nist(hyps, refs);
    const double r = rouge_l(hyps, refs);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(nst >= 0.0);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), gen);
    std::vector<std::string> ph;
    ReferenceSets pr;
    for (std::size_t i : idx) {
      ph.push_back(hyps[i]);
      pr.push_back(refs[i]);
    }
    CHECK(near(bleu(ph, pr), b, 1e-12));
    CHECK(near(nist(ph, pr), nst, 1e-12));
    CHECK(near(rouge_l(ph, pr), r, 1e-12));

    ReferenceSets more = refs;
    more[gen() % n].push_back(sentence());
    CHECK(bleu(hyps, more) >= b - 1e-12);
    CHECK(rouge_l(hyps, more) >= r - 1e-12);
  }
}

TEST_CASE("reference modes") {
  const std::vector<std::string> hyps = {"it is a pub", "it is cheap"};
  const ReferenceSets refs = {{"it is a pub", "it is a bar"}, {"it is cheap", "it is not cheap"}};
  const MetricReport multi = evaluate_corpus(hyps, refs, ReferenceMode::kMultiReference);
  CHECK(multi.bleu == doctest::Approx(1.0).epsilon(1e-12));
  const MetricReport avg = evaluate_corpus(hyps, refs, ReferenceMode::kAveragedSingle);
  const MetricReport first = evaluate_corpus(hyps, {{refs[0][0]}, {refs[1][0]}});
  const MetricReport second = evaluate_corpus(hyps, {{refs[0][1]}, {refs[1][1]}});
  CHECK(near(avg.bleu, 0.5 * (first.bleu + second.bleu)));
  CHECK(near(avg.nist, 0.5 * (first.nist + second.nist)));
  CHECK(near(avg.rouge_l, 0.5 * (first.rouge_l + second.rouge_l)));
  CHECK(avg.bleu < multi.bleu);
}
