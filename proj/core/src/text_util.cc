#include "text_util.h"

#include <cstdio>
#include <stdexcept>

namespace hmmner {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

std::vector<std::size_t> SuffixOffsets(std::string_view text) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto byte = static_cast<unsigned char>(text[i]);
    // Continuation bytes (10xxxxxx) belong to the preceding code point unless
    // nothing precedes them.
    if ((byte & 0xC0) != 0x80 || starts.empty()) starts.push_back(i);
  }
  std::vector<std::size_t> offsets;
  offsets.reserve(starts.size() + 1);
  offsets.push_back(text.size());
  for (auto it = starts.rbegin(); it != starts.rend(); ++it) {
    offsets.push_back(*it);
  }
  return offsets;
}

std::string Escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\x1f') {
      out += "\\x1f";
    } else {
      out += c;
    }
  }
  return out;
}

std::string Unescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out += text[i];
      continue;
    }
    if (i + 1 < text.size() && text[i + 1] == '\\') {
      out += '\\';
      ++i;
    } else if (text.substr(i, 4) == "\\x1f") {
      out += '\x1f';
      i += 3;
    } else {
      throw std::invalid_argument("bad escape sequence");
    }
  }
  return out;
}

std::string FormatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string_view Trim(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = text.find_last_not_of(" \t\r");
  return text.substr(b, e - b + 1);
}

}  // namespace hmmner
