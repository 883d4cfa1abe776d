// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hmmner/corpus.h"
#include "hmmner/decoder.h"
#include "hmmner/emission_model.h"
#include "hmmner/error.h"
#include "hmmner/evaluator.h"
#include "hmmner/file_io.h"
#include "hmmner/model_io.h"
#include "hmmner/suffix_model.h"
#include "hmmner/transition_model.h"
#include "testing/cli_harness.h"
#include "testing/oracles.h"
#include "testing/synthetic.h"

namespace hmmner::testing {
namespace {

const std::string kDataDir = HMMNER_TEST_DATA_DIR;

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  std::string Summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failures_) s << ", " << failures_ << " failed";
    for (const auto& m : messages_) s << "\n    " << m;
    return s.str();
  }
  std::size_t checks() const { return checks_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

double Seconds(const std::function<void()>& fn) {
  auto begin = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
      .count();
}

std::vector<Corpus> MicroCorpora() {
  std::mt19937_64 rng(20250101);
  const std::vector<std::vector<std::string>> pools = {
      {"O", "B-X"},
      {"O", "B-X", "I-X"},
      {"O", "B-X", "E-X"},
      {"O", "B-X", "I-X", "E-X"},
      {"O", "B-X", "B-Y", "E-Y"},
  };
  std::vector<Corpus> corpora;
  for (int i = 0; i < 20; ++i) {
    corpora.push_back(RandomMicroCorpus(rng, pools[i % pools.size()],
                                        4 + i % 7, 5, 4 + i % 5));
  }
  return corpora;
}

std::vector<ObservationTriplet> Probe(std::mt19937_64& rng,
                                      const Corpus& corpus, std::size_t n) {
  std::vector<ObservationTriplet> tokens;
  for (std::size_t i = 0; i < n; ++i) {
    const Sentence& s = corpus[rng() % corpus.size()];
    ObservationTriplet o = s.tokens[rng() % s.size()];
    if (rng() % 4 == 0) o.word += "~";
    tokens.push_back(o);
  }
  return tokens;
}

std::string Join(const std::vector<TagId>& path) {
  std::string s;
  for (TagId t : path) s += std::to_string(t) + " ";
  return s;
}

// 1. Viterbi equals exhaustive enumeration.
void ViterbiOracle(Check& check) {
  std::mt19937_64 rng(1);
  double elapsed = Seconds([&] {
    for (const Corpus& corpus : MicroCorpora()) {
      TrainOptions options;
      options.max_suffix_len = 4;
      options.emission_mode = rng() % 2 ? EmissionMode::kStandard
                                        : EmissionMode::kPaperFaithful;
      TrainedModel model = TrainedModel::Train(corpus, options);
      check.Expect(model.tag_count() <= 4, "more than four tags");
      for (EndTransition end : {EndTransition::kTrigram, EndTransition::kBigram}) {
        BruteForceDecoder oracle(model, end);
        DecodeOptions decode;
        decode.end_transition = end;
        for (std::size_t n = 1; n <= 5; ++n) {
          for (int p = 0; p < 8; ++p) {
            std::vector<ObservationTriplet> tokens = Probe(rng, corpus, n);
            BruteForceResult want = oracle.Decode(tokens);
            if (!want.viable) {
              bool threw = false;
              try {
                ViterbiDecodeScored(model, tokens, decode);
              } catch (const Error& e) {
                threw = e.code() == ErrorCode::kNoViablePath;
              }
              check.Expect(threw, "oracle found no path but Viterbi did");
              continue;
            }
            DecodeResult got = ViterbiDecodeScored(model, tokens, decode);
            check.Expect(std::abs(got.log_score - want.score) <= 1e-9,
                         "score " + std::to_string(got.log_score) + " vs " +
                             std::to_string(want.score));
            bool same_path =
                want.optima.size() == 1
                    ? got.path == want.best
                    : std::find(want.optima.begin(), want.optima.end(),
                                got.path) != want.optima.end();
            check.Expect(same_path, "path " + Join(got.path) + "vs " +
                                        Join(want.best));
          }
        }
      }
    }
  });
  check.Expect(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
}

// 2. Deleted interpolation weights.
void Lambdas(Check& check) {
  std::vector<Corpus> corpora = MicroCorpora();
  std::mt19937_64 rng(2);
  corpora.push_back(SyntheticNerCorpus(rng, {.target_tokens = 5000}));
  corpora.push_back(DeterministicCorpus());
  for (const Corpus& corpus : corpora) {
    TrainedModel model = TrainedModel::Train(corpus);
    const auto& l = *model.transitions().lambdas();
    check.Expect(std::abs(l.trigram + l.bigram + l.unigram - 1.0) <= 1e-12,
                 "lambdas do not sum to one");
  }
  Corpus abab;
  abab.push_back(TaggedSentence({"w", "w", "w", "w", "w", "w", "w", "w"},
                                {"B-A", "B-B", "B-A", "B-B", "B-A", "B-B",
                                 "B-A", "B-B"}));
  hmmner::Lambdas l = EstimateLambdas(TransitionModel::CountNgrams(abab));
  check.Expect(l.trigram == 7.0 / 9.0 && l.bigram == 1.0 / 9.0 &&
                   l.unigram == 1.0 / 9.0,
               "alternating fixture gave " + std::to_string(l.trigram) + ", " +
                   std::to_string(l.bigram) + ", " + std::to_string(l.unigram));
}

// 3. Normalization of transitions, suffix conditionals and emission rows.
void Normalization(Check& check) {
  std::vector<Corpus> corpora = MicroCorpora();
  std::mt19937_64 rng(3);
  corpora.push_back(SyntheticNerCorpus(rng, {.target_tokens = 8000}));
  for (const Corpus& corpus : corpora) {
    TrainedModel model = TrainedModel::Train(corpus);
    const TransitionModel& tm = model.transitions();
    const TagInventory& inv = model.inventory();
    for (TagId a = 0; a <= inv.start(); ++a) {
      for (TagId b = 0; b <= inv.start(); ++b) {
        if (tm.history(a, b) == 0 || tm.history(b) == 0) continue;
        double sum = tm.Prob(a, b, inv.end());
        for (TagId t = 0; t < inv.size(); ++t) sum += tm.Prob(a, b, t);
        check.Expect(std::abs(sum - 1.0) <= 1e-9, "transition row sums to " +
                                                      std::to_string(sum));
      }
    }
    for (const auto& [suffix, dist] : model.suffixes().Sorted()) {
      double sum = 0.0;
      for (double p : model.suffixes().SuffixDistribution(suffix)) sum += p;
      check.Expect(std::abs(sum - 1.0) <= 1e-9, "suffix conditional sums to " +
                                                    std::to_string(sum));
    }
    for (const auto& [key, stats] : model.emissions().Sorted()) {
      double sum = 0.0;
      for (TagId t = 0; t < inv.size(); ++t) {
        sum += model.emissions().Prob(*stats, t);
      }
      check.Expect(std::abs(sum - 1.0) <= 1e-9, "emission row sums to " +
                                                    std::to_string(sum));
    }
  }
}

// 4. Deterministic corpus recovered exactly through the CLI.
void DeterministicRecovery(Check& check) {
  TempDir dir("acceptance4");
  const std::string gold = dir / "gold.tsv";
  const std::string input = dir / "input.tsv";
  const std::string out = dir / "out.tsv";
  WriteFileAtomic(gold, SerializeTsv(DeterministicCorpus()));
  WriteFileAtomic(input, SerializeTsv(StripTags(DeterministicCorpus())));
  CliResult train = RunCli({"train", gold, dir / "model"});
  check.Expect(train.status == 0, "train: " + train.err);
  CliResult tag = RunCli({"tag", dir / "model", input, out});
  check.Expect(tag.status == 0, "tag: " + tag.err);
  CliResult eval = RunCli({"eval", gold, out});
  check.Expect(eval.status == 0, "eval: " + eval.err);
  check.Expect(eval.out.find("ALL\t8\t8\t8\t1.0000\t1.0000\t1.0000\n") !=
                   std::string::npos,
               "eval report:\n" + eval.out);
  EvalReport report = Evaluate(ParseTsv(ReadFile(gold)), ParseTsv(ReadFile(out)));
  check.Expect(report.overall.f_measure() == 1.0, "F is not exactly 1");
}

bool Continues(const NeTag& tag) {
  return tag.kind == TagKind::kI || tag.kind == TagKind::kE;
}

bool Sound(const std::vector<NeTag>& tags) {
  if (!tags.empty() && Continues(tags[0])) return false;
  for (std::size_t i = 1; i < tags.size(); ++i) {
    if (Continues(tags[i]) && tags[i - 1].is_outside()) return false;
  }
  return true;
}

// 5. Postprocessing soundness on decoder output and random tag strings.
void PostprocessSoundness(Check& check) {
  std::mt19937_64 rng(5);
  Corpus corpus = SyntheticNerCorpus(rng, {.target_tokens = 4000});
  TrainedModel model = TrainedModel::Train(corpus);
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::size_t raw_violations = 0;
  std::uniform_int_distribution<std::size_t> len(1, 15);
  for (int i = 0; i < 5000; ++i) {
    std::vector<NeTag> raw =
        ViterbiDecodeScored(model, Probe(rng, corpus, len(rng))).tags;
    raw_violations += Sound(raw) ? 0 : 1;
    violations += Sound(Postprocess(raw)) ? 0 : 1;
    ++cases;
  }
  const std::vector<NeTag> alphabet =
      Tags({"O", "B-PERSON", "I-PERSON", "E-PERSON", "I-DATE", "E-DATE"});
  for (int i = 0; i < 5000; ++i) {
    std::vector<NeTag> raw(len(rng));
    for (NeTag& t : raw) t = alphabet[rng() % alphabet.size()];
    raw_violations += Sound(raw) ? 0 : 1;
    violations += Sound(Postprocess(raw)) ? 0 : 1;
    ++cases;
  }
  check.Expect(cases == 10000, "case count");
  check.Expect(raw_violations > 0, "fuzzer produced no orphan runs");
  check.Expect(violations == 0,
               std::to_string(violations) + " unsound outputs");
}

// 6. Language presets through the CLI.
void LanguageLengths(Check& check) {
  TempDir dir("acceptance6");
  const std::string corpus = dir / "c.tsv";
  WriteFileAtomic(corpus, SerializeTsv(DeterministicCorpus()));
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"bengali", 8}, {"english", 9}, {"hindi", 9},  {"marathi", 9},
      {"punjabi", 9}, {"tamil", 16},  {"telugu", 13}};
  for (const auto& [lang, len] : expected) {
    CliResult r = RunCli({"train", corpus, dir / lang, "--lang", lang});
    check.Expect(r.status == 0, lang + ": " + r.err);
    check.Expect(r.out.find("max_suffix_len\t" + std::to_string(len) + "\n") !=
                     std::string::npos,
                 lang + " reported:\n" + r.out);
    TrainedModel model = LoadModel(dir / lang);
    check.Expect(model.suffixes().max_len() == len,
                 lang + " model has " + std::to_string(model.suffixes().max_len()));
  }
}

// 7. SSF golden file, TSV idempotence and save/load decode equivalence.
void RoundTrips(Check& check) {
  TempDir dir("acceptance7");
  CliResult r = RunCli({"convert", kDataDir + "/fixture.ssf", dir / "ssf.tsv",
                        "--format", "ssf"});
  check.Expect(r.status == 0, "convert ssf: " + r.err);
  const std::string golden = ReadFile(kDataDir + "/fixture.golden.tsv");
  check.Expect(ReadFile(dir / "ssf.tsv") == golden, "SSF output differs from golden");

  r = RunCli({"convert", dir / "ssf.tsv", dir / "again.tsv"});
  check.Expect(r.status == 0, "convert tsv: " + r.err);
  check.Expect(ReadFile(dir / "again.tsv") == golden, "TSV convert not idempotent");

  std::mt19937_64 rng(7);
  std::vector<std::pair<std::string, Corpus>> fixtures = {
      {"deterministic", DeterministicCorpus()},
      {"golden", ParseTsv(golden)},
      {"eval_gold", ParseTsv(ReadFile(kDataDir + "/eval_gold.tsv"))},
      {"synthetic", SyntheticNerCorpus(rng, {.target_tokens = 4000})},
  };
  for (const auto& [name, corpus] : fixtures) {
    const std::string train = dir / (name + ".tsv");
    const std::string model_path = dir / (name + ".model");
    WriteFileAtomic(train, SerializeTsv(corpus));
    r = RunCli({"train", train, model_path});
    check.Expect(r.status == 0, name + " train: " + r.err);
    TrainedModel fresh = TrainedModel::Train(corpus);
    TrainedModel loaded = LoadModel(model_path);
    check.Expect(SerializeModel(loaded) == ReadFile(model_path),
                 name + " re-serialization differs");
    Corpus probes = corpus;
    std::mt19937_64 probe_rng(11);
    for (Sentence& s : probes) {
      for (ObservationTriplet& o : s.tokens) {
        if (probe_rng() % 3 == 0) o.word += "~";
      }
    }
    probes.insert(probes.end(), corpus.begin(), corpus.end());
    for (const Sentence& s : probes) {
      DecodeResult a = ViterbiDecodeScored(fresh, s.tokens);
      DecodeResult b = ViterbiDecodeScored(loaded, s.tokens);
      check.Expect(a.path == b.path && a.log_score == b.log_score,
                   name + " decode differs after load");
    }
  }
}

// 8. Training and tagging speed at 50,000 tokens.
void ScaleGuard(Check& check) {
  TempDir dir("acceptance8");
  std::mt19937_64 rng(8);
  Corpus corpus = SyntheticNerCorpus(rng, {.target_tokens = 50000});
  check.Expect(TokenCount(corpus) >= 50000, "corpus too small");
  WriteFileAtomic(dir / "train.tsv", SerializeTsv(corpus));
  WriteFileAtomic(dir / "input.tsv", SerializeTsv(StripTags(corpus)));
  CliResult r;
  double train = Seconds([&] { r = RunCli({"train", dir / "train.tsv", dir / "m"}); });
  check.Expect(r.status == 0, "train: " + r.err);
  double tag = Seconds([&] {
    r = RunCli({"tag", dir / "m", dir / "input.tsv", dir / "out.tsv", "-j", "1"});
  });
  check.Expect(r.status == 0, "tag: " + r.err);
  check.Expect(train < 10.0, "training took " + std::to_string(train) + " s");
  check.Expect(tag < 5.0, "tagging took " + std::to_string(tag) + " s");
  std::printf("  (50k tokens: train %.2f s, tag %.2f s)\n", train, tag);
}

// 9. Multi-threaded tagging equals single-threaded tagging.
void ParallelEqualsSerial(Check& check) {
  TempDir dir("acceptance9");
  std::mt19937_64 rng(9);
  SyntheticOptions options;
  options.target_tokens = 1;
  Corpus corpus;
  while (corpus.size() < 1000) {
    Corpus one = SyntheticNerCorpus(rng, options);
    corpus.push_back(std::move(one[0]));
  }
  WriteFileAtomic(dir / "train.tsv", SerializeTsv(corpus));
  WriteFileAtomic(dir / "input.tsv", SerializeTsv(StripTags(corpus)));
  check.Expect(RunCli({"train", dir / "train.tsv", dir / "m"}).status == 0, "train");
  check.Expect(RunCli({"tag", dir / "m", dir / "input.tsv", dir / "serial.tsv",
                       "-j", "1"})
                       .status == 0,
               "serial tag");
  const std::string serial = ReadFile(dir / "serial.tsv");
  check.Expect(ParseTsv(serial).size() == 1000, "sentence count");
  for (const char* threads : {"2", "4", "8"}) {
    const std::string out = dir / (std::string("parallel") + threads + ".tsv");
    check.Expect(RunCli({"tag", dir / "m", dir / "input.tsv", out, "-j", threads})
                         .status == 0,
                 "parallel tag");
    check.Expect(ReadFile(out) == serial,
                 std::string("output differs with ") + threads + " threads");
  }
}

struct Criterion {
  int number;
  const char* title;
  void (*run)(Check&);
};

}  // namespace
}  // namespace hmmner::testing

int main() {
  using namespace hmmner::testing;
  const Criterion criteria[] = {
      {1, "Viterbi equals exhaustive enumeration", ViterbiOracle},
      {2, "interpolation weights", Lambdas},
      {3, "normalization suite", Normalization},
      {4, "deterministic-corpus recovery", DeterministicRecovery},
      {5, "post-processing soundness", PostprocessSoundness},
      {6, "language suffix lengths", LanguageLengths},
      {7, "round trips", RoundTrips},
      {8, "scale guard", ScaleGuard},
      {9, "parallel equals serial", ParallelEqualsSerial},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Check check;
    std::string error;
    try {
      c.run(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && check.ok();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%s)%s%s\n", ok ? "PASS" : "FAIL",
                c.number, c.title, check.Summary().c_str(),
                error.empty() ? "" : "\n    exception: ", error.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
