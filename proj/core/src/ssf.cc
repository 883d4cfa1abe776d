// Reader for the supported subset of the Shakti Standard Format.
//
//   <Sentence id="1">
//   1       ((      NP      <fs ne=PERSON>
//   1.1     Ram     NNP
//   1.2     Kumar   NNP
//           ))
//   </Sentence>
//
// Token lines may carry a trailing feature structure, which is ignored. Lines
// beginning with '<' outside a sentence (document wrappers) are skipped.

#include <optional>
#include <string>
#include <vector>

#include "hmmner/corpus.h"
#include "hmmner/error.h"
#include "text_util.h"

namespace hmmner {
namespace {

struct Group {
  std::string label;
  std::optional<std::string> ne;
  std::size_t tokens_seen = 0;
  long last_child_index = -1;
};

bool IsDottedDecimal(std::string_view index) {
  if (index.empty() || index.front() == '.' || index.back() == '.') {
    return false;
  }
  char prev = '.';
  for (char c : index) {
    if (c == '.') {
      if (prev == '.') return false;
    } else if (c < '0' || c > '9') {
      return false;
    }
    prev = c;
  }
  return true;
}

long LastComponent(std::string_view index) {
  std::size_t dot = index.rfind('.');
  std::string_view last =
      dot == std::string_view::npos ? index : index.substr(dot + 1);
  long value = 0;
  for (char c : last) value = value * 10 + (c - '0');
  return value;
}

// Extracts the value of the `ne` attribute from "<fs ... ne=CAT ...>".
std::optional<std::string> NeAttribute(std::string_view fs) {
  std::size_t pos = 0;
  while ((pos = fs.find("ne=", pos)) != std::string_view::npos) {
    bool at_boundary = pos == 0 || fs[pos - 1] == ' ' || fs[pos - 1] == '\t' ||
                       fs[pos - 1] == '<';
    if (!at_boundary) {
      pos += 3;
      continue;
    }
    std::string_view rest = fs.substr(pos + 3);
    std::string value;
    if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
      char quote = rest.front();
      std::size_t close = rest.find(quote, 1);
      if (close == std::string_view::npos) return std::nullopt;
      value = std::string(rest.substr(1, close - 1));
    } else {
      std::size_t stop = rest.find_first_of(" \t>/");
      value = std::string(rest.substr(0, stop));
    }
    if (value.empty()) return std::nullopt;
    return value;
  }
  return std::nullopt;
}

class SsfReader {
 public:
  Corpus Read(std::string_view text) {
    ForEachLine(text, [this](std::string_view line) { Line(line); });
    if (in_sentence_) {
      throw Error(ErrorCode::kMissingSentenceDelimiter,
                  "sentence opened at line " +
                      std::to_string(sentence_line_) + " is never closed",
                  line_no_);
    }
    if (corpus_.empty()) {
      throw Error(ErrorCode::kEmptyCorpus, "no sentence found");
    }
    return std::move(corpus_);
  }

 private:
  void Line(std::string_view raw) {
    ++line_no_;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view trimmed = Trim(raw);
    if (trimmed.empty()) return;

    if (trimmed.starts_with("<Sentence")) {
      if (in_sentence_) {
        throw Error(ErrorCode::kMissingSentenceDelimiter,
                    "new sentence opened before </Sentence>", line_no_);
      }
      in_sentence_ = true;
      sentence_line_ = line_no_;
      current_ = Sentence{};
      stack_.clear();
      top_last_index_ = -1;
      return;
    }
    if (trimmed.starts_with("</Sentence")) {
      if (!in_sentence_) {
        throw Error(ErrorCode::kMissingSentenceDelimiter,
                    "</Sentence> without an open sentence", line_no_);
      }
      if (!stack_.empty()) {
        throw Error(ErrorCode::kUnbalancedGroup,
                    std::to_string(stack_.size()) + " group(s) left open",
                    line_no_);
      }
      in_sentence_ = false;
      if (!current_.tokens.empty()) corpus_.push_back(std::move(current_));
      return;
    }
    if (!in_sentence_) {
      if (trimmed.front() == '<') return;
      throw Error(ErrorCode::kMissingSentenceDelimiter,
                  "content outside <Sentence>", line_no_);
    }

    if (trimmed == "))") {
      CloseGroup();
      return;
    }
    std::vector<std::string_view> fields = SplitTabs(raw);
    for (auto& f : fields) f = Trim(f);
    if (fields.size() >= 2 && fields[1] == "))") {
      if (!fields[0].empty() && !IsDottedDecimal(fields[0])) {
        throw Error(ErrorCode::kMalformedTokenLine,
                    "index '" + std::string(fields[0]) +
                        "' is not dotted decimal",
                    line_no_);
      }
      CloseGroup();
      return;
    }
    if (fields.size() >= 3 && fields[1] == "((") {
      OpenGroup(fields);
      return;
    }
    Token(fields);
  }

  void CheckIndex(std::string_view index) {
    if (!IsDottedDecimal(index)) {
      throw Error(ErrorCode::kMalformedTokenLine,
                  "index '" + std::string(index) + "' is not dotted decimal",
                  line_no_);
    }
    long& last = stack_.empty() ? top_last_index_ : stack_.back().last_child_index;
    long value = LastComponent(index);
    if (value <= last) {
      throw Error(ErrorCode::kMalformedTokenLine,
                  "index '" + std::string(index) + "' is not increasing",
                  line_no_);
    }
    last = value;
  }

  void OpenGroup(const std::vector<std::string_view>& fields) {
    CheckIndex(fields[0]);
    if (fields[2].empty()) {
      throw Error(ErrorCode::kMalformedTokenLine, "group without label",
                  line_no_);
    }
    Group group;
    group.label = std::string(fields[2]);
    if (fields.size() >= 4) {
      group.ne = NeAttribute(fields[3]);
      if (group.ne &&
          group.ne->find_first_of(" \t-") != std::string::npos) {
        throw Error(ErrorCode::kMalformedTokenLine,
                    "NE category '" + *group.ne + "' is not a single symbol",
                    line_no_);
      }
    }
    stack_.push_back(std::move(group));
  }

  void CloseGroup() {
    if (stack_.empty()) {
      throw Error(ErrorCode::kUnbalancedGroup, "'))' without open group",
                  line_no_);
    }
    stack_.pop_back();
  }

  void Token(const std::vector<std::string_view>& fields) {
    if (fields.size() < 3 || fields[1].empty() || fields[2].empty()) {
      throw Error(ErrorCode::kMalformedTokenLine,
                  "expected index<TAB>word<TAB>POS", line_no_);
    }
    CheckIndex(fields[0]);
    if (stack_.empty()) {
      throw Error(ErrorCode::kMalformedTokenLine,
                  "token outside any chunk group", line_no_);
    }

    Group& chunk = stack_.back();
    ObservationTriplet triplet{
        std::string(fields[1]), std::string(fields[2]),
        (chunk.tokens_seen == 0 ? "B-" : "I-") + chunk.label};
    try {
      ValidateTriplet(triplet, line_no_);
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedTokenLine, e.what(), line_no_);
    }

    NeTag tag;
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (it->ne) {
        tag = it->tokens_seen == 0 ? NeTag::Begin(*it->ne)
                                   : NeTag::Inside(*it->ne);
        break;
      }
    }
    for (Group& g : stack_) ++g.tokens_seen;

    current_.tokens.push_back(std::move(triplet));
    current_.tags.push_back(std::move(tag));
  }

  Corpus corpus_;
  Sentence current_;
  std::vector<Group> stack_;
  long top_last_index_ = -1;
  bool in_sentence_ = false;
  std::size_t sentence_line_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace

Corpus ParseSsf(std::string_view text) { return SsfReader().Read(text); }

}  // namespace hmmner
