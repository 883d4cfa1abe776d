#include "hmmner/transition_model.h"

#include <array>
#include <string>

#include "hmmner/error.h"

namespace hmmner {
namespace {

double Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

// (c - 1) / (d - 1) with 0/0 = 0. A zero denominator means d == 1, in which
// case the numerator is zero as well.
double LeaveOneOut(std::uint64_t c, std::uint64_t d) {
  if (d <= 1) return 0.0;
  return static_cast<double>(c - 1) / static_cast<double>(d - 1);
}

}  // namespace

void TransitionModel::Allocate() {
  unigram_.assign(Width(), 0);
  history1_.assign(Width(), 0);
  bigram_.assign(Width() * Width(), 0);
  history2_.assign(Width() * Width(), 0);
  trigram_.clear();
  total_ = 0;
}

void TransitionModel::Add(TagId prev2, TagId prev, TagId t, Count n) {
  trigram_[Triple(prev2, prev, t)] += n;
  history2_[Pair(prev2, prev)] += n;
}

TransitionModel TransitionModel::CountNgrams(const Corpus& corpus) {
  return CountNgrams(corpus, TagInventory::FromCorpus(corpus));
}

TransitionModel TransitionModel::CountNgrams(const Corpus& corpus,
                                             TagInventory inventory) {
  TransitionModel model;
  model.inventory_ = std::move(inventory);
  model.Allocate();
  const TagId start = model.inventory_.start();
  const TagId end = model.inventory_.end();

  std::vector<TagId> seq;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const Sentence& sentence = corpus[s];
    if (!sentence.tagged()) {
      throw Error(ErrorCode::kUntaggedSentence,
                  "sentence " + std::to_string(s) + " carries no NE tags");
    }
    seq.assign({start, start});
    for (const NeTag& tag : sentence.tags) {
      seq.push_back(model.inventory_.Lookup(tag.ToString()));
    }
    seq.push_back(end);
    for (std::size_t i = 2; i < seq.size(); ++i) {
      model.Add(seq[i - 2], seq[i - 1], seq[i], 1);
      ++model.bigram_[model.Pair(seq[i - 1], seq[i])];
      ++model.history1_[seq[i - 1]];
      ++model.unigram_[seq[i]];
      ++model.total_;
    }
  }
  return model;
}

TransitionModel TransitionModel::FromCounts(
    TagInventory inventory, const std::map<TagId, Count>& unigrams,
    const std::map<std::pair<TagId, TagId>, Count>& bigrams,
    const std::map<std::tuple<TagId, TagId, TagId>, Count>& trigrams,
    std::optional<Lambdas> lambdas) {
  TransitionModel model;
  model.inventory_ = std::move(inventory);
  model.Allocate();
  const std::size_t width = model.Width();
  auto check = [width](TagId id) {
    if (id >= width) {
      throw Error(ErrorCode::kModelFormat,
                  "tag id " + std::to_string(id) + " out of range");
    }
  };
  for (const auto& [t, n] : unigrams) {
    check(t);
    model.unigram_[t] = n;
    model.total_ += n;
  }
  for (const auto& [key, n] : bigrams) {
    check(key.first);
    check(key.second);
    model.bigram_[model.Pair(key.first, key.second)] = n;
    model.history1_[key.first] += n;
  }
  for (const auto& [key, n] : trigrams) {
    const auto& [a, b, c] = key;
    check(a);
    check(b);
    check(c);
    model.Add(a, b, c, n);
  }
  model.lambdas_ = lambdas;
  return model;
}

TransitionModel::Count TransitionModel::trigram(TagId prev2, TagId prev,
                                                TagId t) const {
  auto it = trigram_.find(Triple(prev2, prev, t));
  return it == trigram_.end() ? 0 : it->second;
}

double TransitionModel::MlTrigram(TagId prev2, TagId prev, TagId t) const {
  return Ratio(trigram(prev2, prev, t), history(prev2, prev));
}

double TransitionModel::MlBigram(TagId prev, TagId t) const {
  return Ratio(bigram(prev, t), history(prev));
}

double TransitionModel::MlUnigram(TagId t) const {
  return Ratio(unigram(t), total_);
}

void TransitionModel::CheckHistory(TagId id) const {
  if (id > inventory_.start()) {
    throw Error(ErrorCode::kUnknownTag,
                "tag id " + std::to_string(id) + " cannot be a history");
  }
}

void TransitionModel::CheckTarget(TagId id) const {
  if (id == inventory_.start() || id > inventory_.end()) {
    throw Error(ErrorCode::kUnknownTag,
                "tag id " + std::to_string(id) + " cannot be predicted");
  }
}

double TransitionModel::Prob(TagId prev2, TagId prev, TagId t) const {
  CheckHistory(prev2);
  CheckHistory(prev);
  CheckTarget(t);
  if (!lambdas_) {
    throw Error(ErrorCode::kDegenerateCorpus, "lambdas are not estimated");
  }
  return lambdas_->trigram * MlTrigram(prev2, prev, t) +
         lambdas_->bigram * MlBigram(prev, t) +
         lambdas_->unigram * MlUnigram(t);
}

double TransitionModel::Prob(std::string_view prev2, std::string_view prev,
                             std::string_view t) const {
  return Prob(inventory_.Lookup(prev2), inventory_.Lookup(prev),
              inventory_.Lookup(t));
}

std::map<std::pair<TagId, TagId>, TransitionModel::Count>
TransitionModel::BigramTable() const {
  std::map<std::pair<TagId, TagId>, Count> table;
  const auto width = static_cast<TagId>(Width());
  for (TagId a = 0; a < width; ++a) {
    for (TagId b = 0; b < width; ++b) {
      if (Count n = bigram(a, b)) table.emplace(std::pair{a, b}, n);
    }
  }
  return table;
}

std::map<std::tuple<TagId, TagId, TagId>, TransitionModel::Count>
TransitionModel::TrigramTable() const {
  std::map<std::tuple<TagId, TagId, TagId>, Count> table;
  const std::uint64_t width = Width();
  for (const auto& [key, n] : trigram_) {
    auto c = static_cast<TagId>(key % width);
    auto b = static_cast<TagId>((key / width) % width);
    auto a = static_cast<TagId>(key / (width * width));
    table.emplace(std::tuple{a, b, c}, n);
  }
  return table;
}

Lambdas EstimateLambdas(const TransitionModel& model) {
  const std::uint64_t n = model.total();
  if (n <= 1) {
    throw Error(ErrorCode::kDegenerateCorpus,
                "deleted interpolation needs more than one position");
  }
  // Iterate in sorted order so the floating-point sums are reproducible.
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (const auto& [key, count] : model.TrigramTable()) {
    const auto& [a, b, c] = key;
    const double tri = LeaveOneOut(count, model.history(a, b));
    const double bi = LeaveOneOut(model.bigram(b, c), model.history(b));
    const double uni = LeaveOneOut(model.unigram(c), n);
    if (tri >= bi && tri >= uni) {
      acc[0] += static_cast<double>(count);
    } else if (bi >= uni) {
      acc[1] += static_cast<double>(count);
    } else {
      acc[2] += static_cast<double>(count);
    }
  }
  const double sum = acc[0] + acc[1] + acc[2];
  if (sum <= 0.0) {
    throw Error(ErrorCode::kDegenerateCorpus, "no trigram evidence");
  }
  return Lambdas{acc[0] / sum, acc[1] / sum, acc[2] / sum};
}

}  // namespace hmmner
