#include "hmmner/emission_model.h"

#include <algorithm>
#include <stdexcept>

#include "hmmner/error.h"
#include "text_util.h"

namespace hmmner {

std::string_view EmissionModeName(EmissionMode mode) {
  return mode == EmissionMode::kStandard ? "standard" : "paper_faithful";
}

EmissionMode ParseEmissionMode(std::string_view name) {
  if (name == "paper" || name == "paper_faithful") {
    return EmissionMode::kPaperFaithful;
  }
  if (name == "standard") return EmissionMode::kStandard;
  throw std::invalid_argument("unknown emission mode '" + std::string(name) +
                              "'");
}

std::string PseudoWord(const ObservationTriplet& triplet) {
  std::string out;
  out.reserve(triplet.word.size() + triplet.pos.size() +
              triplet.chunk.size() + 2);
  out += triplet.word;
  out += kUnitSeparator;
  out += triplet.pos;
  out += kUnitSeparator;
  out += triplet.chunk;
  return out;
}

EmissionModel EmissionModel::Build(const Corpus& corpus,
                                   const TagInventory& inventory,
                                   EmissionMode mode) {
  EmissionModel model;
  model.mode_ = mode;
  model.tag_counts_.assign(inventory.size(), 0);

  std::unordered_map<std::string, std::map<TagId, Count>> joint;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const Sentence& sentence = corpus[s];
    if (!sentence.tagged()) {
      throw Error(ErrorCode::kUntaggedSentence,
                  "sentence " + std::to_string(s) + " carries no NE tags");
    }
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      TagId tag = inventory.Lookup(sentence.tags[i].ToString());
      if (tag >= inventory.size()) {
        throw Error(ErrorCode::kUnknownTag, "boundary symbol in corpus");
      }
      ++joint[PseudoWord(sentence.tokens[i])][tag];
      ++model.tag_counts_[tag];
    }
  }

  model.table_.reserve(joint.size());
  for (auto& [key, tags] : joint) {
    Stats stats;
    for (const auto& [tag, n] : tags) {
      stats.tags.emplace_back(tag, n);
      stats.total += n;
    }
    model.table_.emplace(key, std::move(stats));
  }
  return model;
}

EmissionModel EmissionModel::FromCounts(
    std::size_t tag_count, EmissionMode mode,
    const std::map<std::string, std::vector<std::pair<TagId, Count>>>& joint,
    const std::map<std::string, Count>& totals) {
  EmissionModel model;
  model.mode_ = mode;
  model.tag_counts_.assign(tag_count, 0);
  if (joint.size() != totals.size()) {
    throw Error(ErrorCode::kModelFormat,
                "EMIT and OBSCOUNT list different observations");
  }
  for (const auto& [key, tags] : joint) {
    auto total_it = totals.find(key);
    if (total_it == totals.end()) {
      throw Error(ErrorCode::kModelFormat, "observation without OBSCOUNT");
    }
    Stats stats;
    stats.tags = tags;
    std::sort(stats.tags.begin(), stats.tags.end());
    for (const auto& [tag, n] : stats.tags) {
      if (tag >= tag_count || n == 0) {
        throw Error(ErrorCode::kModelFormat, "bad EMIT record");
      }
      stats.total += n;
      model.tag_counts_[tag] += n;
    }
    if (stats.total != total_it->second) {
      throw Error(ErrorCode::kModelFormat,
                  "OBSCOUNT disagrees with the EMIT records");
    }
    model.table_.emplace(key, std::move(stats));
  }
  return model;
}

const EmissionModel::Stats* EmissionModel::Find(
    const ObservationTriplet& triplet) const {
  return FindPseudoWord(PseudoWord(triplet));
}

const EmissionModel::Stats* EmissionModel::FindPseudoWord(
    const std::string& pseudo_word) const {
  auto it = table_.find(pseudo_word);
  return it == table_.end() ? nullptr : &it->second;
}

EmissionModel::Count EmissionModel::ObservationCount(
    const ObservationTriplet& triplet) const {
  const Stats* stats = Find(triplet);
  return stats ? stats->total : 0;
}

EmissionModel::Count EmissionModel::JointCount(
    const ObservationTriplet& triplet, TagId tag) const {
  const Stats* stats = Find(triplet);
  if (!stats) return 0;
  for (const auto& [t, n] : stats->tags) {
    if (t == tag) return n;
  }
  return 0;
}

double EmissionModel::Prob(const ObservationTriplet& triplet,
                           TagId tag) const {
  const Stats* stats = Find(triplet);
  if (!stats) {
    throw Error(ErrorCode::kUnknownObservation,
                "triplet <" + triplet.word + ", " + triplet.pos + ", " +
                    triplet.chunk + "> not seen in training");
  }
  return Prob(*stats, tag);
}

double EmissionModel::Prob(const Stats& stats, TagId tag) const {
  if (tag >= tag_counts_.size()) {
    throw Error(ErrorCode::kUnknownTag, "tag id " + std::to_string(tag));
  }
  Count joint = 0;
  for (const auto& [t, n] : stats.tags) {
    if (t == tag) {
      joint = n;
      break;
    }
  }
  if (joint == 0) return 0.0;
  const Count denom =
      mode_ == EmissionMode::kPaperFaithful ? stats.total : tag_counts_[tag];
  return static_cast<double>(joint) / static_cast<double>(denom);
}

std::vector<std::pair<std::string_view, const EmissionModel::Stats*>>
EmissionModel::Sorted() const {
  std::vector<std::pair<std::string_view, const Stats*>> out;
  out.reserve(table_.size());
  for (const auto& [key, stats] : table_) out.emplace_back(key, &stats);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace hmmner
