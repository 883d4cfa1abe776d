#ifndef HMMNER_SUFFIX_MODEL_H_
#define HMMNER_SUFFIX_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hmmner/corpus.h"
#include "hmmner/tag_inventory.h"

namespace hmmner {

inline constexpr std::uint64_t kDefaultRareMax = 2;

// Tag distributions conditioned on pseudo-word suffixes, harvested from rare
// training observations and smoothed from shorter to longer suffixes:
//
//   P(t | s_i) = (p(t | s_i) + theta * P(t | s_{i-1})) / (1 + theta)
//
// with P(t | empty) = p(t | empty). Only the sparse ML estimates p are stored;
// smoothed distributions are rebuilt on lookup. Suffix lengths are counted in
// code points, the U+001F field separators included.
class SuffixModel {
 public:
  using SparseDistribution = std::vector<std::pair<TagId, double>>;

  SuffixModel() = default;

  // An observation is rare when its triplet occurs at most `rare_max` times.
  // Throws kNoRareWords if nothing qualifies, std::invalid_argument if
  // max_len is zero.
  static SuffixModel Build(const Corpus& corpus, const TagInventory& inventory,
                           std::size_t max_len,
                           std::uint64_t rare_max = kDefaultRareMax);

  static SuffixModel FromTables(
      std::size_t tag_count, std::size_t max_len, double theta,
      std::vector<double> tag_priors,
      std::map<std::string, SparseDistribution> ml_estimates);

  std::size_t max_len() const { return max_len_; }
  double theta() const { return theta_; }
  std::size_t tag_count() const { return tag_priors_.size(); }
  // Unconditioned ML tag probabilities over the training corpus.
  const std::vector<double>& tag_priors() const { return tag_priors_; }

  bool Contains(std::string_view suffix) const;

  // Smoothed P(. | suffix) for a stored suffix; throws std::out_of_range
  // otherwise.
  std::vector<double> SuffixDistribution(std::string_view suffix) const;

  // Smoothed distribution of the longest stored suffix of `pseudo_word` with
  // at most max_len() code points. `matched_len` receives its length.
  std::vector<double> Distribution(std::string_view pseudo_word,
                                   std::size_t* matched_len = nullptr) const;

  // P(t | s) / P(t): the likelihood up to the tag-independent P(o) factor.
  // Zero for tags with a zero prior.
  double UnknownScore(const ObservationTriplet& triplet, TagId tag) const;
  std::vector<double> UnknownScores(const ObservationTriplet& triplet) const;

  // ML estimates sorted by suffix, for serialization.
  std::vector<std::pair<std::string_view, const SparseDistribution*>>
  Sorted() const;

  std::size_t size() const { return ml_.size(); }

 private:
  std::vector<double> Smooth(std::string_view pseudo_word,
                             const std::vector<std::size_t>& offsets,
                             std::size_t length) const;

  std::size_t max_len_ = 0;
  double theta_ = 0.0;
  std::vector<double> tag_priors_;
  std::unordered_map<std::string, SparseDistribution> ml_;
};

// Tuned maximum suffix lengths for the seven contest languages (bengali,
// english, hindi, marathi, punjabi, tamil, telugu); case-insensitive.
std::optional<std::size_t> SuffixLengthForLanguage(std::string_view language);

// Sample standard deviation (denominator n - 1); zero when n < 2.
double SampleStandardDeviation(std::span<const double> values);

}  // namespace hmmner

#endif  // HMMNER_SUFFIX_MODEL_H_
