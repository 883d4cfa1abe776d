#include "hmmner/suffix_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmmner/emission_model.h"
#include "hmmner/error.h"
#include "text_util.h"

namespace hmmner {

std::optional<std::size_t> SuffixLengthForLanguage(
    std::string_view language) {
  static constexpr std::pair<std::string_view, std::size_t> kLengths[] = {
      {"bengali", 8}, {"english", 9}, {"hindi", 9},  {"marathi", 9},
      {"punjabi", 9}, {"tamil", 16},  {"telugu", 13},
  };
  std::string lower(language);
  for (char& c : lower) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  for (const auto& [name, length] : kLengths) {
    if (lower == name) return length;
  }
  return std::nullopt;
}

double SampleStandardDeviation(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

SuffixModel SuffixModel::Build(const Corpus& corpus,
                               const TagInventory& inventory,
                               std::size_t max_len, std::uint64_t rare_max) {
  if (max_len == 0) {
    throw std::invalid_argument("maximum suffix length must be at least 1");
  }
  const std::size_t tag_count = inventory.size();

  std::unordered_map<std::string, std::uint64_t> frequency;
  std::vector<std::uint64_t> tag_counts(tag_count, 0);
  std::uint64_t tokens = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const Sentence& sentence = corpus[s];
    if (!sentence.tagged()) {
      throw Error(ErrorCode::kUntaggedSentence,
                  "sentence " + std::to_string(s) + " carries no NE tags");
    }
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      ++frequency[PseudoWord(sentence.tokens[i])];
      ++tag_counts[inventory.Lookup(sentence.tags[i].ToString())];
      ++tokens;
    }
  }

  SuffixModel model;
  model.max_len_ = max_len;
  model.tag_priors_.resize(tag_count);
  for (std::size_t t = 0; t < tag_count; ++t) {
    model.tag_priors_[t] = tokens == 0 ? 0.0
                                       : static_cast<double>(tag_counts[t]) /
                                             static_cast<double>(tokens);
  }
  model.theta_ = SampleStandardDeviation(model.tag_priors_);

  std::unordered_map<std::string, std::map<TagId, std::uint64_t>> counts;
  std::size_t rare_tokens = 0;
  for (const Sentence& sentence : corpus) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      std::string pseudo = PseudoWord(sentence.tokens[i]);
      if (frequency[pseudo] > rare_max) continue;
      ++rare_tokens;
      TagId tag = inventory.Lookup(sentence.tags[i].ToString());
      std::vector<std::size_t> offsets = SuffixOffsets(pseudo);
      const std::size_t longest = std::min(max_len, offsets.size() - 1);
      for (std::size_t k = 0; k <= longest; ++k) {
        ++counts[pseudo.substr(offsets[k])][tag];
      }
    }
  }
  if (rare_tokens == 0) {
    throw Error(ErrorCode::kNoRareWords,
                "no observation occurs at most " + std::to_string(rare_max) +
                    " times");
  }

  model.ml_.reserve(counts.size());
  for (const auto& [suffix, by_tag] : counts) {
    std::uint64_t total = 0;
    for (const auto& [tag, n] : by_tag) total += n;
    SparseDistribution dist;
    dist.reserve(by_tag.size());
    for (const auto& [tag, n] : by_tag) {
      dist.emplace_back(tag,
                        static_cast<double>(n) / static_cast<double>(total));
    }
    model.ml_.emplace(suffix, std::move(dist));
  }
  return model;
}

SuffixModel SuffixModel::FromTables(
    std::size_t tag_count, std::size_t max_len, double theta,
    std::vector<double> tag_priors,
    std::map<std::string, SparseDistribution> ml_estimates) {
  if (tag_priors.size() != tag_count) {
    throw Error(ErrorCode::kModelFormat, "TAGPRIOR size mismatch");
  }
  if (max_len == 0 || !(theta >= 0.0)) {
    throw Error(ErrorCode::kModelFormat, "bad suffix model parameters");
  }
  if (!ml_estimates.contains("")) {
    throw Error(ErrorCode::kModelFormat, "empty suffix missing");
  }
  SuffixModel model;
  model.max_len_ = max_len;
  model.theta_ = theta;
  model.tag_priors_ = std::move(tag_priors);
  for (auto& [suffix, dist] : ml_estimates) {
    std::sort(dist.begin(), dist.end());
    for (const auto& [tag, p] : dist) {
      if (tag >= tag_count) {
        throw Error(ErrorCode::kModelFormat, "SUFFIX tag out of range");
      }
    }
    model.ml_.emplace(suffix, std::move(dist));
  }
  return model;
}

bool SuffixModel::Contains(std::string_view suffix) const {
  return ml_.contains(std::string(suffix));
}

std::vector<double> SuffixModel::Smooth(
    std::string_view pseudo_word, const std::vector<std::size_t>& offsets,
    std::size_t length) const {
  std::vector<double> probs(tag_count(), 0.0);
  for (const auto& [tag, p] : ml_.at("")) probs[tag] = p;

  std::vector<double> ml(tag_count());
  for (std::size_t k = 1; k <= length; ++k) {
    const SparseDistribution& level =
        ml_.at(std::string(pseudo_word.substr(offsets[k])));
    std::fill(ml.begin(), ml.end(), 0.0);
    for (const auto& [tag, p] : level) ml[tag] = p;
    for (std::size_t t = 0; t < probs.size(); ++t) {
      probs[t] = (ml[t] + theta_ * probs[t]) / (1.0 + theta_);
    }
  }
  return probs;
}

std::vector<double> SuffixModel::SuffixDistribution(
    std::string_view suffix) const {
  if (!Contains(suffix)) {
    throw std::out_of_range("suffix not in model");
  }
  std::vector<std::size_t> offsets = SuffixOffsets(suffix);
  return Smooth(suffix, offsets, offsets.size() - 1);
}

std::vector<double> SuffixModel::Distribution(std::string_view pseudo_word,
                                              std::size_t* matched_len) const {
  std::vector<std::size_t> offsets = SuffixOffsets(pseudo_word);
  std::size_t length = std::min(max_len_, offsets.size() - 1);
  while (length > 0 &&
         !ml_.contains(std::string(pseudo_word.substr(offsets[length])))) {
    --length;
  }
  if (matched_len) *matched_len = length;
  return Smooth(pseudo_word, offsets, length);
}

std::vector<double> SuffixModel::UnknownScores(
    const ObservationTriplet& triplet) const {
  std::vector<double> scores = Distribution(PseudoWord(triplet));
  for (std::size_t t = 0; t < scores.size(); ++t) {
    scores[t] = tag_priors_[t] > 0.0 ? scores[t] / tag_priors_[t] : 0.0;
  }
  return scores;
}

double SuffixModel::UnknownScore(const ObservationTriplet& triplet,
                                 TagId tag) const {
  if (tag >= tag_count()) {
    throw Error(ErrorCode::kUnknownTag, "tag id " + std::to_string(tag));
  }
  return UnknownScores(triplet)[tag];
}

std::vector<std::pair<std::string_view, const SuffixModel::SparseDistribution*>>
SuffixModel::Sorted() const {
  std::vector<std::pair<std::string_view, const SparseDistribution*>> out;
  out.reserve(ml_.size());
  for (const auto& [suffix, dist] : ml_) out.emplace_back(suffix, &dist);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace hmmner
