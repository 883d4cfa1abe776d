#ifndef HMMNER_TESTING_SYNTHETIC_H_
#define HMMNER_TESTING_SYNTHETIC_H_

// Corpus generators shared by tests and benchmarks. All of them are
// deterministic given the generator state.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "hmmner/corpus.h"

namespace hmmner::testing {

inline ObservationTriplet Triplet(std::string word, std::string pos = "NN",
                                  std::string chunk = "B-NP") {
  return {std::move(word), std::move(pos), std::move(chunk)};
}

// Builds a tagged sentence from parallel word and tag-surface lists; POS and
// chunk are derived from the word so triplets stay consistent.
inline Sentence TaggedSentence(const std::vector<std::string>& words,
                               const std::vector<std::string>& tags) {
  Sentence s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    s.tokens.push_back(Triplet(words[i]));
    s.tags.push_back(NeTag::Parse(tags[i]));
  }
  return s;
}

inline std::vector<NeTag> Tags(const std::vector<std::string>& surfaces) {
  std::vector<NeTag> tags;
  for (const auto& s : surfaces) tags.push_back(NeTag::Parse(s));
  return tags;
}

inline Corpus StripTags(Corpus corpus) {
  for (Sentence& s : corpus) s.tags.clear();
  return corpus;
}

// Micro-corpus for exhaustive checks: `tag_pool` surfaces (at most four),
// sentences of length 1..max_len over a vocabulary of `vocab` words with a
// couple of POS and chunk values, tags drawn uniformly.
inline Corpus RandomMicroCorpus(std::mt19937_64& rng,
                                const std::vector<std::string>& tag_pool,
                                std::size_t sentences, std::size_t max_len,
                                std::size_t vocab) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::uniform_int_distribution<std::size_t> tag(0, tag_pool.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  Corpus corpus;
  for (std::size_t s = 0; s < sentences; ++s) {
    Sentence sentence;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t w = word(rng);
      sentence.tokens.push_back(
          Triplet("w" + std::to_string(w), coin(rng) ? "NN" : "VM",
                  i == 0 || coin(rng) ? "B-NP" : "I-NP"));
      sentence.tags.push_back(NeTag::Parse(tag_pool[tag(rng)]));
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

struct SyntheticOptions {
  std::size_t target_tokens = 50000;
  std::vector<std::string> categories = {"PERSON", "LOCATION", "ORGANIZATION",
                                         "DATE"};
  std::size_t outside_vocab = 6000;
  std::size_t entity_vocab = 1500;
  double entity_rate = 0.12;
};

// NER-shaped corpus: Zipf-distributed vocabularies (so rare words exist),
// entities of 1-3 tokens in B/I/E form, POS and chunk tags tied to the word.
inline Corpus SyntheticNerCorpus(std::mt19937_64& rng,
                                 const SyntheticOptions& options = {}) {
  auto zipf = [](std::size_t n) {
    std::vector<double> weights(n);
    for (std::size_t r = 0; r < n; ++r) weights[r] = 1.0 / double(r + 1);
    return std::discrete_distribution<std::size_t>(weights.begin(),
                                                   weights.end());
  };
  auto outside = zipf(options.outside_vocab);
  auto entity = zipf(options.entity_vocab);
  static const char* kPos[] = {"NN", "VM", "JJ", "PSP", "CC", "RB", "PRP"};
  std::uniform_int_distribution<std::size_t> sentence_len(6, 24);
  std::uniform_int_distribution<std::size_t> entity_len(1, 3);
  std::uniform_int_distribution<std::size_t> category(
      0, options.categories.size() - 1);
  std::bernoulli_distribution starts_entity(options.entity_rate);

  Corpus corpus;
  std::size_t tokens = 0;
  while (tokens < options.target_tokens) {
    Sentence sentence;
    const std::size_t n = sentence_len(rng);
    while (sentence.size() < n) {
      if (starts_entity(rng)) {
        const std::string& cat = options.categories[category(rng)];
        std::size_t len = entity_len(rng);
        for (std::size_t i = 0; i < len; ++i) {
          std::size_t w = entity(rng);
          sentence.tokens.push_back(
              Triplet(cat.substr(0, 3) + "_" + std::to_string(w), "NNP",
                      i == 0 ? "B-NP" : "I-NP"));
          TagKind kind = i == 0 ? TagKind::kB
                                : (i + 1 == len ? TagKind::kE : TagKind::kI);
          sentence.tags.push_back(NeTag{kind, cat});
        }
      } else {
        std::size_t w = outside(rng);
        const char* pos = kPos[w % 7];
        sentence.tokens.push_back(
            Triplet("w" + std::to_string(w), pos,
                    w % 3 == 0 ? "B-VGF" : (w % 3 == 1 ? "B-NP" : "I-NP")));
        sentence.tags.push_back(NeTag::Outside());
      }
    }
    tokens += sentence.size();
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

// Every triplet maps to exactly one tag; includes rare observations so the
// suffix model can be built.
inline Corpus DeterministicCorpus() {
  Corpus corpus;
  corpus.push_back(TaggedSentence({"Ram", "Kumar", "went", "to", "Kolkata"},
                                  {"B-PER", "E-PER", "O", "O", "B-LOC"}));
  corpus.push_back(TaggedSentence({"Sita", "went", "to", "Delhi", "Gate"},
                                  {"B-PER", "O", "O", "B-LOC", "E-LOC"}));
  corpus.push_back(TaggedSentence({"the", "Bengal", "Tiger", "Trust", "won"},
                                  {"O", "B-ORG", "I-ORG", "E-ORG", "O"}));
  corpus.push_back(TaggedSentence({"Ram", "Kumar", "won"},
                                  {"B-PER", "E-PER", "O"}));
  corpus.push_back(TaggedSentence({"to", "Kolkata", "went", "the", "Sita"},
                                  {"O", "B-LOC", "O", "O", "B-PER"}));
  return corpus;
}

}  // namespace hmmner::testing

#endif  // HMMNER_TESTING_SYNTHETIC_H_
