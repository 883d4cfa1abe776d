#ifndef HMMNER_DECODER_H_
#define HMMNER_DECODER_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "hmmner/corpus.h"
#include "hmmner/emission_model.h"
#include "hmmner/suffix_model.h"
#include "hmmner/tag_inventory.h"
#include "hmmner/transition_model.h"

namespace hmmner {

inline constexpr std::string_view kModelFormatVersion = "hmmner-model-1";
inline constexpr std::size_t kDefaultSuffixLength = 10;

struct TrainOptions {
  EmissionMode emission_mode = EmissionMode::kPaperFaithful;
  std::size_t max_suffix_len = kDefaultSuffixLength;
  std::uint64_t rare_max = kDefaultRareMax;
};

// How the sentence-final transition into END is scored.
enum class EndTransition {
  // Smoothed P(END | t_{n-1}, t_n), the same function as interior positions.
  kTrigram,
  // P(END | t_n) from the bigram and unigram terms only, reweighted to sum
  // to one.
  kBigram,
};

struct DecodeOptions {
  EndTransition end_transition = EndTransition::kTrigram;
};

// The three submodels over one tag inventory. Immutable once constructed;
// safe to share between decoding threads.
class TrainedModel {
 public:
  // Throws kModelFormat if the submodels disagree on the tag inventory or
  // the transition lambdas are unset.
  TrainedModel(TransitionModel transitions, EmissionModel emissions,
               SuffixModel suffixes, TrainOptions options);

  // Counts, lambda estimation, emission and suffix models in one go.
  static TrainedModel Train(const Corpus& corpus,
                            const TrainOptions& options = {});

  const TagInventory& inventory() const { return transitions_.inventory(); }
  const TransitionModel& transitions() const { return transitions_; }
  const EmissionModel& emissions() const { return emissions_; }
  const SuffixModel& suffixes() const { return suffixes_; }
  const TrainOptions& options() const { return options_; }

  std::size_t tag_count() const { return inventory().size(); }

  // log P(t | prev2, prev) from the cached table; `t` may be END.
  double LogTransition(TagId prev2, TagId prev, TagId t) const;
  double LogEnd(TagId prev2, TagId prev, EndTransition mode) const;

  // Per-tag log emission scores. Known triplets use the emission model; if a
  // known triplet scores zero for every tag, or for unknown triplets, the
  // suffix model is used. `known` reports which table answered.
  std::vector<double> LogEmissions(const ObservationTriplet& triplet,
                                   bool* known = nullptr) const;
  std::vector<double> LogSuffixEmissions(
      const ObservationTriplet& triplet) const;

 private:
  std::size_t TableIndex(TagId prev2, TagId prev, TagId t) const;

  TransitionModel transitions_;
  EmissionModel emissions_;
  SuffixModel suffixes_;
  TrainOptions options_;
  // [prev2][prev][t] over (K+1)^3 cells; slot K is START for histories and
  // END for targets.
  std::vector<double> log_transitions_;
  std::vector<double> log_end_bigram_;
};

struct DecodeResult {
  std::vector<TagId> path;
  std::vector<NeTag> tags;
  double log_score = 0.0;
};

// Second-order Viterbi with START START padding and a final END transition.
// Equal scores resolve to the lowest tag id. Throws kEmptySentence or
// kNoViablePath.
DecodeResult ViterbiDecodeScored(const TrainedModel& model,
                                 const std::vector<ObservationTriplet>& tokens,
                                 const DecodeOptions& options = {});

std::vector<NeTag> ViterbiDecode(const TrainedModel& model,
                                 const Sentence& sentence,
                                 const DecodeOptions& options = {});

// Erases I runs that do not continue an entity: any I or E tag whose
// predecessor in the repaired output is O (the position before the first
// token counts as O) becomes O.
std::vector<NeTag> Postprocess(std::vector<NeTag> tags);

// Decodes and repairs every sentence, preserving order. With threads > 1 the
// sentences are spread over worker threads; the output does not depend on
// the thread count. Errors carry the failing sentence index.
Corpus TagCorpus(const TrainedModel& model, const Corpus& corpus,
                 const DecodeOptions& options = {}, std::size_t threads = 1);

}  // namespace hmmner

#endif  // HMMNER_DECODER_H_
