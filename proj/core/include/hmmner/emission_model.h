#ifndef HMMNER_EMISSION_MODEL_H_
#define HMMNER_EMISSION_MODEL_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hmmner/corpus.h"
#include "hmmner/tag_inventory.h"

namespace hmmner {

// How known observations are scored.
enum class EmissionMode {
  // C(o,t) / C(o), the formula as published. Rows sum to one over tags.
  kPaperFaithful,
  // C(o,t) / C(t), the conventional likelihood.
  kStandard,
};

std::string_view EmissionModeName(EmissionMode mode);
// Accepts "paper", "paper_faithful", "standard". Throws std::invalid_argument.
EmissionMode ParseEmissionMode(std::string_view name);

// word U+001F pos U+001F chunk. Triplet fields never contain U+001F, so this
// is a bijection and doubles as the hash key for observation counts.
std::string PseudoWord(const ObservationTriplet& triplet);

class EmissionModel {
 public:
  using Count = std::uint64_t;

  struct Stats {
    Count total = 0;
    // Sorted by tag id, counts > 0.
    std::vector<std::pair<TagId, Count>> tags;
  };

  EmissionModel() = default;

  // Throws kUntaggedSentence on untagged input and kUnknownTag if the corpus
  // holds a tag missing from `inventory`.
  static EmissionModel Build(const Corpus& corpus,
                             const TagInventory& inventory, EmissionMode mode);

  // Rebuilds from serialized tables keyed by pseudo-word. Throws
  // kModelFormat when observation totals disagree with the joint counts.
  static EmissionModel FromCounts(
      std::size_t tag_count, EmissionMode mode,
      const std::map<std::string, std::vector<std::pair<TagId, Count>>>& joint,
      const std::map<std::string, Count>& totals);

  EmissionMode mode() const { return mode_; }

  const Stats* Find(const ObservationTriplet& triplet) const;
  const Stats* FindPseudoWord(const std::string& pseudo_word) const;
  bool Known(const ObservationTriplet& triplet) const {
    return Find(triplet) != nullptr;
  }

  Count ObservationCount(const ObservationTriplet& triplet) const;
  Count JointCount(const ObservationTriplet& triplet, TagId tag) const;
  Count TagCount(TagId tag) const { return tag_counts_.at(tag); }

  // Throws kUnknownObservation when C(o) = 0; the caller must use the
  // suffix model for those.
  double Prob(const ObservationTriplet& triplet, TagId tag) const;
  double Prob(const Stats& stats, TagId tag) const;

  // Entries sorted by pseudo-word.
  std::vector<std::pair<std::string_view, const Stats*>> Sorted() const;

  std::size_t size() const { return table_.size(); }

 private:
  EmissionMode mode_ = EmissionMode::kPaperFaithful;
  std::unordered_map<std::string, Stats> table_;
  std::vector<Count> tag_counts_;
};

}  // namespace hmmner

#endif  // HMMNER_EMISSION_MODEL_H_
