#ifndef HMMNER_SRC_TEXT_UTIL_H_
#define HMMNER_SRC_TEXT_UTIL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hmmner {

// Tab, newline, carriage return and the unit separator used to build
// pseudo-words.
inline constexpr std::string_view kForbiddenFieldChars{"\t\n\r\x1f", 4};

inline constexpr char kUnitSeparator = '\x1f';

// Calls fn(line) for every '\n'-terminated line. A final unterminated line is
// also reported; a trailing '\n' does not produce an extra empty line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      fn(text.substr(pos));
      return;
    }
    fn(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
}

std::vector<std::string_view> SplitTabs(std::string_view line);

// Byte offsets at which a suffix of k code points starts, for k = 0..n.
// Element k is the offset of the suffix with k code points; element 0 is
// text.size(). Invalid UTF-8 lead bytes are treated as single characters.
std::vector<std::size_t> SuffixOffsets(std::string_view text);

// Model-file escaping: backslash and U+001F are written as "\\" and "\x1f".
std::string Escape(std::string_view text);
std::string Unescape(std::string_view text);

// Shortest representation that reads back to the same double ("%.17g").
std::string FormatDouble(double value);

std::string_view Trim(std::string_view text);

}  // namespace hmmner

#endif  // HMMNER_SRC_TEXT_UTIL_H_
