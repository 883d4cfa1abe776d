#include "hmmner/corpus.h"

#include <algorithm>
#include <optional>

#include "hmmner/error.h"
#include "text_util.h"

namespace hmmner {

std::string NeTag::ToString() const {
  switch (kind) {
    case TagKind::kO: return "O";
    case TagKind::kB: return "B-" + category;
    case TagKind::kI: return "I-" + category;
    case TagKind::kE: return "E-" + category;
  }
  return "O";
}

NeTag NeTag::Parse(std::string_view surface) {
  if (surface == "O") return Outside();
  if (surface.size() < 3 || surface[1] != '-') {
    throw Error(ErrorCode::kInvalidScheme,
                "bad NE tag '" + std::string(surface) + "'");
  }
  std::string_view category = surface.substr(2);
  for (char c : category) {
    if (c == '-' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw Error(ErrorCode::kInvalidScheme,
                  "bad NE category in '" + std::string(surface) + "'");
    }
  }
  switch (surface[0]) {
    case 'B': return Begin(std::string(category));
    case 'I': return Inside(std::string(category));
    case 'E': return End(std::string(category));
    default:
      throw Error(ErrorCode::kInvalidScheme,
                  "bad NE tag '" + std::string(surface) + "'");
  }
}

void ValidateTriplet(const ObservationTriplet& triplet, std::size_t line) {
  if (triplet.word.empty()) {
    throw Error(ErrorCode::kMalformedLine, "empty word", line);
  }
  for (const std::string* field : {&triplet.word, &triplet.pos, &triplet.chunk}) {
    if (field->find_first_of(kForbiddenFieldChars) != std::string::npos) {
      throw Error(ErrorCode::kMalformedLine,
                  "field contains a tab, newline or U+001F", line);
    }
  }
}

Corpus ParseTsv(std::string_view text) {
  Corpus corpus;
  Sentence current;
  std::size_t current_fields = 0;

  auto flush = [&] {
    if (!current.tokens.empty()) corpus.push_back(std::move(current));
    current = Sentence{};
    current_fields = 0;
  };

  std::size_t line_no = 0;
  ForEachLine(text, [&](std::string_view line) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      return;
    }
    std::vector<std::string_view> fields = SplitTabs(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected 3 or 4 tab-separated fields, got " +
                      std::to_string(fields.size()),
                  line_no);
    }
    if (current_fields != 0 && current_fields != fields.size()) {
      throw Error(ErrorCode::kMalformedLine,
                  "field count changes within a sentence", line_no);
    }
    for (std::string_view field : fields) {
      if (field.empty()) {
        throw Error(ErrorCode::kMalformedLine, "empty field", line_no);
      }
    }
    current_fields = fields.size();
    ObservationTriplet triplet{std::string(fields[0]), std::string(fields[1]),
                               std::string(fields[2])};
    ValidateTriplet(triplet, line_no);
    current.tokens.push_back(std::move(triplet));
    if (fields.size() == 4) {
      try {
        current.tags.push_back(NeTag::Parse(fields[3]));
      } catch (const Error& e) {
        throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
      }
    }
  });
  flush();

  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no sentence found");
  }
  return corpus;
}

std::string SerializeTsv(const Corpus& corpus) {
  std::string out;
  for (const Sentence& sentence : corpus) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      const ObservationTriplet& tok = sentence.tokens[i];
      out += tok.word;
      out += '\t';
      out += tok.pos;
      out += '\t';
      out += tok.chunk;
      if (sentence.tagged()) {
        out += '\t';
        out += sentence.tags[i].ToString();
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::string SerializeTsvStripped(const Corpus& corpus) {
  std::string out;
  for (const Sentence& sentence : corpus) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      out += sentence.tokens[i].word;
      out += '\t';
      out += sentence.tagged() ? sentence.tags[i].ToString() : "O";
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::vector<NeTag> AugmentEndTags(const std::vector<NeTag>& tags) {
  std::vector<NeTag> out = tags;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].kind == TagKind::kE) {
      throw Error(ErrorCode::kInvalidScheme,
                  "input already contains E tags at token " +
                      std::to_string(i));
    }
  }
  for (std::size_t i = 1; i < tags.size(); ++i) {
    const NeTag& tag = tags[i];
    if (tag.kind != TagKind::kI) continue;
    const NeTag& prev = tags[i - 1];
    bool continues = (prev.kind == TagKind::kB || prev.kind == TagKind::kI) &&
                     prev.category == tag.category;
    if (!continues) continue;
    bool last = i + 1 == tags.size() || tags[i + 1].kind != TagKind::kI ||
                tags[i + 1].category != tag.category;
    if (last) out[i].kind = TagKind::kE;
  }
  return out;
}

Corpus AugmentEndTags(const Corpus& corpus) {
  Corpus out = corpus;
  for (Sentence& sentence : out) {
    sentence.tags = AugmentEndTags(sentence.tags);
  }
  return out;
}

std::vector<EntitySpan> TagsToSpans(const std::vector<NeTag>& tags,
                                    SpanMode mode) {
  std::vector<EntitySpan> spans;
  std::optional<EntitySpan> open;

  auto close = [&] {
    if (open) spans.push_back(std::move(*open));
    open.reset();
  };
  auto orphan = [&](std::size_t i) {
    if (mode == SpanMode::kStrict) {
      throw Error(ErrorCode::kInvalidScheme,
                  "tag " + tags[i].ToString() + " at token " +
                      std::to_string(i) + " has no opening B");
    }
  };

  for (std::size_t i = 0; i < tags.size(); ++i) {
    const NeTag& tag = tags[i];
    switch (tag.kind) {
      case TagKind::kO:
        close();
        break;
      case TagKind::kB:
        close();
        open = EntitySpan{tag.category, i, i};
        break;
      case TagKind::kI:
        if (open && open->category == tag.category) {
          open->end = i;
        } else {
          orphan(i);
          close();
          open = EntitySpan{tag.category, i, i};
        }
        break;
      case TagKind::kE:
        if (open && open->category == tag.category) {
          open->end = i;
        } else {
          orphan(i);
          close();
          open = EntitySpan{tag.category, i, i};
        }
        close();
        break;
    }
  }
  close();
  return spans;
}

std::vector<NeTag> SpansToTags(const std::vector<EntitySpan>& spans,
                               std::size_t length) {
  std::vector<NeTag> tags(length);
  std::vector<bool> used(length, false);
  for (const EntitySpan& span : spans) {
    if (span.start > span.end || span.end >= length) {
      throw Error(ErrorCode::kSpanOutOfBounds,
                  "span [" + std::to_string(span.start) + ", " +
                      std::to_string(span.end) + "] outside sentence of " +
                      std::to_string(length) + " tokens");
    }
    for (std::size_t i = span.start; i <= span.end; ++i) {
      if (used[i]) {
        throw Error(ErrorCode::kOverlappingSpans,
                    "spans overlap at token " + std::to_string(i));
      }
      used[i] = true;
      tags[i].category = span.category;
      if (i == span.start) {
        tags[i].kind = TagKind::kB;
      } else if (i == span.end) {
        tags[i].kind = TagKind::kE;
      } else {
        tags[i].kind = TagKind::kI;
      }
    }
  }
  return tags;
}

std::size_t TokenCount(const Corpus& corpus) {
  std::size_t n = 0;
  for (const Sentence& s : corpus) n += s.size();
  return n;
}

}  // namespace hmmner
