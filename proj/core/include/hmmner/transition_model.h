#ifndef HMMNER_TRANSITION_MODEL_H_
#define HMMNER_TRANSITION_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hmmner/corpus.h"
#include "hmmner/tag_inventory.h"

namespace hmmner {

// Interpolation weights for the trigram, bigram and unigram estimates.
struct Lambdas {
  double trigram = 0.0;
  double bigram = 0.0;
  double unigram = 0.0;

  friend bool operator==(const Lambdas&, const Lambdas&) = default;
};

// Tag n-gram statistics over sentences padded as START START t1..tn END.
//
// START pads contribute to histories only; END is counted as a unigram, so
// total() = tokens + sentences. The ML denominators are history counts, i.e.
// the marginals of the next-higher table: for any history not involving
// START they equal the stored bigram/unigram counts, and for START histories
// they count sentences.
class TransitionModel {
 public:
  using Count = std::uint64_t;

  TransitionModel() = default;

  // Tallies n-grams. Throws kUntaggedSentence on untagged input.
  static TransitionModel CountNgrams(const Corpus& corpus);
  static TransitionModel CountNgrams(const Corpus& corpus,
                                     TagInventory inventory);

  // Rebuilds a model from serialized tables. Keys are tag ids.
  static TransitionModel FromCounts(
      TagInventory inventory, const std::map<TagId, Count>& unigrams,
      const std::map<std::pair<TagId, TagId>, Count>& bigrams,
      const std::map<std::tuple<TagId, TagId, TagId>, Count>& trigrams,
      std::optional<Lambdas> lambdas);

  const TagInventory& inventory() const { return inventory_; }

  Count unigram(TagId t) const { return unigram_[t]; }
  Count bigram(TagId prev, TagId t) const { return bigram_[Pair(prev, t)]; }
  Count trigram(TagId prev2, TagId prev, TagId t) const;

  Count history(TagId prev) const { return history1_[prev]; }
  Count history(TagId prev2, TagId prev) const {
    return history2_[Pair(prev2, prev)];
  }

  // N: all non-START positions, END included.
  Count total() const { return total_; }
  Count sentences() const { return history(inventory_.start(), inventory_.start()); }

  const std::optional<Lambdas>& lambdas() const { return lambdas_; }
  void set_lambdas(const Lambdas& lambdas) { lambdas_ = lambdas; }

  // Maximum-likelihood estimates with 0/0 = 0.
  double MlTrigram(TagId prev2, TagId prev, TagId t) const;
  double MlBigram(TagId prev, TagId t) const;
  double MlUnigram(TagId t) const;

  // Smoothed P(t | prev2, prev). prev2/prev range over tags and START, t over
  // tags and END. Requires lambdas; throws kUnknownTag on ids out of range.
  double Prob(TagId prev2, TagId prev, TagId t) const;
  double Prob(std::string_view prev2, std::string_view prev,
              std::string_view t) const;

  // Sorted views for serialization and tests.
  std::map<std::pair<TagId, TagId>, Count> BigramTable() const;
  std::map<std::tuple<TagId, TagId, TagId>, Count> TrigramTable() const;

 private:
  std::size_t Width() const { return inventory_.size() + 2; }
  std::size_t Pair(TagId a, TagId b) const { return a * Width() + b; }
  std::uint64_t Triple(TagId a, TagId b, TagId c) const {
    return (static_cast<std::uint64_t>(a) * Width() + b) * Width() + c;
  }
  void Allocate();
  void Add(TagId prev2, TagId prev, TagId t, Count n);
  void CheckHistory(TagId id) const;
  void CheckTarget(TagId id) const;

  TagInventory inventory_;
  std::vector<Count> unigram_;
  std::vector<Count> bigram_;
  std::unordered_map<std::uint64_t, Count> trigram_;
  std::vector<Count> history1_;
  std::vector<Count> history2_;
  Count total_ = 0;
  std::optional<Lambdas> lambdas_;
};

// Deleted interpolation. Every observed trigram casts its count for the order
// whose leave-one-out estimate is largest; ties go to the higher order.
// Throws kDegenerateCorpus when N <= 1 or no weight accumulates.
Lambdas EstimateLambdas(const TransitionModel& model);

}  // namespace hmmner

#endif  // HMMNER_TRANSITION_MODEL_H_
