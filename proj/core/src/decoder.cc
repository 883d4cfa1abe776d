#include "hmmner/decoder.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

#include "hmmner/error.h"

namespace hmmner {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double SafeLog(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

bool AllNegInf(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == kNegInf; });
}

}  // namespace

TrainedModel::TrainedModel(TransitionModel transitions,
                           EmissionModel emissions, SuffixModel suffixes,
                           TrainOptions options)
    : transitions_(std::move(transitions)),
      emissions_(std::move(emissions)),
      suffixes_(std::move(suffixes)),
      options_(options) {
  if (!transitions_.lambdas()) {
    throw Error(ErrorCode::kModelFormat, "transition lambdas are unset");
  }
  if (suffixes_.tag_count() != tag_count()) {
    throw Error(ErrorCode::kModelFormat,
                "suffix model and transition model disagree on tag count");
  }
  for (TagId t = 0; t < tag_count(); ++t) {
    if (emissions_.TagCount(t) != transitions_.unigram(t)) {
      throw Error(ErrorCode::kModelFormat,
                  "emission and transition counts disagree for tag " +
                      std::string(inventory().name(t)));
    }
  }

  const std::size_t k = tag_count();
  const std::size_t width = k + 1;
  log_transitions_.resize(width * width * width);
  for (TagId a = 0; a <= k; ++a) {
    for (TagId b = 0; b <= k; ++b) {
      for (TagId c = 0; c <= k; ++c) {
        TagId target = c == k ? inventory().end() : c;
        log_transitions_[TableIndex(a, b, c)] =
            SafeLog(transitions_.Prob(a, b, target));
      }
    }
  }

  const Lambdas& l = *transitions_.lambdas();
  const TagId end = inventory().end();
  log_end_bigram_.resize(width);
  for (TagId b = 0; b <= k; ++b) {
    double lower = l.bigram + l.unigram;
    double p = lower > 0.0 ? (l.bigram * transitions_.MlBigram(b, end) +
                              l.unigram * transitions_.MlUnigram(end)) /
                                 lower
                           : transitions_.MlBigram(b, end);
    log_end_bigram_[b] = SafeLog(p);
  }
}

TrainedModel TrainedModel::Train(const Corpus& corpus,
                                 const TrainOptions& options) {
  TagInventory inventory = TagInventory::FromCorpus(corpus);
  TransitionModel transitions =
      TransitionModel::CountNgrams(corpus, inventory);
  transitions.set_lambdas(EstimateLambdas(transitions));
  EmissionModel emissions =
      EmissionModel::Build(corpus, inventory, options.emission_mode);
  SuffixModel suffixes = SuffixModel::Build(
      corpus, inventory, options.max_suffix_len, options.rare_max);
  return TrainedModel(std::move(transitions), std::move(emissions),
                      std::move(suffixes), options);
}

std::size_t TrainedModel::TableIndex(TagId prev2, TagId prev, TagId t) const {
  const std::size_t width = tag_count() + 1;
  return (prev2 * width + prev) * width + t;
}

double TrainedModel::LogTransition(TagId prev2, TagId prev, TagId t) const {
  const std::size_t k = tag_count();
  if (t == inventory().end()) t = static_cast<TagId>(k);
  if (prev2 > k || prev > k || t > k) {
    throw Error(ErrorCode::kUnknownTag, "tag id out of range");
  }
  return log_transitions_[TableIndex(prev2, prev, t)];
}

double TrainedModel::LogEnd(TagId prev2, TagId prev,
                            EndTransition mode) const {
  if (mode == EndTransition::kBigram) return log_end_bigram_.at(prev);
  return LogTransition(prev2, prev, inventory().end());
}

std::vector<double> TrainedModel::LogSuffixEmissions(
    const ObservationTriplet& triplet) const {
  std::vector<double> scores = suffixes_.UnknownScores(triplet);
  for (double& s : scores) s = SafeLog(s);
  return scores;
}

std::vector<double> TrainedModel::LogEmissions(
    const ObservationTriplet& triplet, bool* known) const {
  if (const EmissionModel::Stats* stats = emissions_.Find(triplet)) {
    std::vector<double> scores(tag_count(), kNegInf);
    for (const auto& [tag, n] : stats->tags) {
      scores[tag] = SafeLog(emissions_.Prob(*stats, tag));
    }
    if (!AllNegInf(scores)) {
      if (known) *known = true;
      return scores;
    }
  }
  if (known) *known = false;
  return LogSuffixEmissions(triplet);
}

DecodeResult ViterbiDecodeScored(const TrainedModel& model,
                                 const std::vector<ObservationTriplet>& tokens,
                                 const DecodeOptions& options) {
  const std::size_t n = tokens.size();
  if (n == 0) throw Error(ErrorCode::kEmptySentence, "nothing to decode");
  const std::size_t k = model.tag_count();
  const auto start = static_cast<TagId>(k);
  const std::size_t states = (k + 1) * k;  // (prev, t), prev may be START

  std::vector<double> delta(states, kNegInf);
  std::vector<double> next(states, kNegInf);
  // backpointers[i][(prev, t)] = best tag two positions back.
  std::vector<std::vector<TagId>> backpointers(n,
                                               std::vector<TagId>(states, 0));

  auto step = [&](std::size_t i, const std::vector<double>& emit) {
    std::fill(next.begin(), next.end(), kNegInf);
    if (i == 0) {
      for (TagId t = 0; t < k; ++t) {
        if (emit[t] == kNegInf) continue;
        next[start * k + t] =
            model.LogTransition(start, start, t) + emit[t];
        backpointers[0][start * k + t] = start;
      }
      return;
    }
    for (TagId prev = 0; prev < k; ++prev) {
      for (TagId t = 0; t < k; ++t) {
        if (emit[t] == kNegInf) continue;
        double best = kNegInf;
        TagId arg = 0;
        for (TagId prev2 = 0; prev2 <= k; ++prev2) {
          double d = delta[prev2 * k + prev];
          if (d == kNegInf) continue;
          double score = d + model.LogTransition(prev2, prev, t);
          if (score > best) {
            best = score;
            arg = prev2;
          }
        }
        if (best == kNegInf) continue;
        next[prev * k + t] = best + emit[t];
        backpointers[i][prev * k + t] = arg;
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    bool known = false;
    std::vector<double> emit = model.LogEmissions(tokens[i], &known);
    step(i, emit);
    if (known && AllNegInf(next)) {
      // Dead end through the known-observation scores: retry the position
      // with the suffix model.
      step(i, model.LogSuffixEmissions(tokens[i]));
    }
    if (AllNegInf(next)) {
      throw Error(ErrorCode::kNoViablePath,
                  "no tag sequence reaches token " + std::to_string(i));
    }
    std::swap(delta, next);
  }

  double best = kNegInf;
  TagId best_prev = 0;
  TagId best_last = 0;
  for (TagId prev = 0; prev <= k; ++prev) {
    for (TagId t = 0; t < k; ++t) {
      double d = delta[prev * k + t];
      if (d == kNegInf) continue;
      double score = d + model.LogEnd(prev, t, options.end_transition);
      if (score > best) {
        best = score;
        best_prev = prev;
        best_last = t;
      }
    }
  }
  if (best == kNegInf) {
    throw Error(ErrorCode::kNoViablePath, "no tag sequence reaches END");
  }

  DecodeResult result;
  result.log_score = best;
  result.path.assign(n, 0);
  result.path[n - 1] = best_last;
  if (n >= 2) result.path[n - 2] = best_prev;
  for (std::size_t i = n - 1; i >= 2; --i) {
    result.path[i - 2] =
        backpointers[i][result.path[i - 1] * k + result.path[i]];
  }
  result.tags.reserve(n);
  for (TagId t : result.path) {
    result.tags.push_back(NeTag::Parse(model.inventory().name(t)));
  }
  return result;
}

std::vector<NeTag> ViterbiDecode(const TrainedModel& model,
                                 const Sentence& sentence,
                                 const DecodeOptions& options) {
  return ViterbiDecodeScored(model, sentence.tokens, options).tags;
}

std::vector<NeTag> Postprocess(std::vector<NeTag> tags) {
  bool prev_outside = true;
  for (NeTag& tag : tags) {
    if ((tag.kind == TagKind::kI || tag.kind == TagKind::kE) &&
        prev_outside) {
      tag = NeTag::Outside();
    }
    prev_outside = tag.is_outside();
  }
  return tags;
}

Corpus TagCorpus(const TrainedModel& model, const Corpus& corpus,
                 const DecodeOptions& options, std::size_t threads) {
  Corpus out(corpus.size());
  std::vector<std::exception_ptr> errors(corpus.size());
  std::atomic<std::size_t> cursor{0};

  auto worker = [&] {
    for (std::size_t i = cursor++; i < corpus.size(); i = cursor++) {
      try {
        out[i].tokens = corpus[i].tokens;
        out[i].tags = Postprocess(ViterbiDecode(model, corpus[i], options));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  threads = std::max<std::size_t>(1, std::min(threads, corpus.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "sentence " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hmmner
