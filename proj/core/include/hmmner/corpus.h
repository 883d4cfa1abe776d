#ifndef HMMNER_CORPUS_H_
#define HMMNER_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hmmner {

// The observed symbol emitted by the HMM: a word with its POS and chunk tag.
// Identity is exact byte equality on all three fields.
struct ObservationTriplet {
  std::string word;
  std::string pos;
  std::string chunk;

  friend bool operator==(const ObservationTriplet&,
                         const ObservationTriplet&) = default;
};

enum class TagKind { kO, kB, kI, kE };

// A named-entity tag in the B/I/E/O scheme. `category` is empty iff kind is O.
struct NeTag {
  TagKind kind = TagKind::kO;
  std::string category;

  static NeTag Outside() { return {}; }
  static NeTag Begin(std::string category) {
    return {TagKind::kB, std::move(category)};
  }
  static NeTag Inside(std::string category) {
    return {TagKind::kI, std::move(category)};
  }
  static NeTag End(std::string category) {
    return {TagKind::kE, std::move(category)};
  }

  bool is_outside() const { return kind == TagKind::kO; }

  // "O", "B-CAT", "I-CAT" or "E-CAT".
  std::string ToString() const;

  // Throws Error(kInvalidScheme) on anything that is not a valid surface form.
  static NeTag Parse(std::string_view surface);

  friend bool operator==(const NeTag&, const NeTag&) = default;
};

struct Sentence {
  std::vector<ObservationTriplet> tokens;
  // Either empty (untagged input) or parallel to `tokens`.
  std::vector<NeTag> tags;

  bool tagged() const { return !tags.empty(); }
  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

using Corpus = std::vector<Sentence>;

// A typed entity over the inclusive token range [start, end].
struct EntitySpan {
  std::string category;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Column format: `word\tpos\tchunk[\tnetag]`, one token per line, sentences
// separated by blank lines.
Corpus ParseTsv(std::string_view text);

// Inverse of ParseTsv for canonical documents: single blank line after each
// sentence, trailing newline.
std::string SerializeTsv(const Corpus& corpus);

// Word and NE tag only, the two-column output form.
std::string SerializeTsvStripped(const Corpus& corpus);

// SSF subset: sentence delimiters, numbered group-open/close lines and token
// lines. Chunk tags become B-/I- forms of the innermost enclosing group label;
// NE tags come from the innermost enclosing group carrying an `ne` attribute.
Corpus ParseSsf(std::string_view text);

// Marks the last token of every entity of length >= 2 as E. Single-token
// entities stay B. Throws kInvalidScheme if the input already holds an E tag.
Corpus AugmentEndTags(const Corpus& corpus);
std::vector<NeTag> AugmentEndTags(const std::vector<NeTag>& tags);

enum class SpanMode {
  // Orphan I/E tags open a new span.
  kLenient,
  // Orphan I/E tags throw kInvalidScheme.
  kStrict,
};

std::vector<EntitySpan> TagsToSpans(const std::vector<NeTag>& tags,
                                    SpanMode mode = SpanMode::kLenient);

// Canonical B/I/E form. Throws kOverlappingSpans or kSpanOutOfBounds.
std::vector<NeTag> SpansToTags(const std::vector<EntitySpan>& spans,
                               std::size_t length);

std::size_t TokenCount(const Corpus& corpus);

// Throws kMalformedLine if a field violates the triplet invariants.
void ValidateTriplet(const ObservationTriplet& triplet, std::size_t line = 0);

}  // namespace hmmner

#endif  // HMMNER_CORPUS_H_
