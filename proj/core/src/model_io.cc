#include "hmmner/model_io.h"

#include <array>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hmmner/error.h"
#include "hmmner/file_io.h"
#include "text_util.h"

namespace hmmner {
namespace {

constexpr std::string_view kSectionPrefix = "#SECTION ";

constexpr std::array<std::string_view, 12> kSections = {
    "HEADER", "LAMBDAS",  "TAGS",     "UNIGRAM", "BIGRAM",    "TRIGRAM",
    "EMIT",   "OBSCOUNT", "TAGPRIOR", "THETA",   "MAXSUFLEN", "SUFFIX"};

void Section(std::string& out, std::string_view name) {
  out += kSectionPrefix;
  out += name;
  out += '\n';
}

template <typename... Fields>
void Record(std::string& out, const Fields&... fields) {
  bool first = true;
  ((out += (first ? "" : "\t"), out += fields, first = false), ...);
  out += '\n';
}

std::vector<std::string_view> SplitUnitSeparator(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t sep = text.find(kUnitSeparator, pos);
    if (sep == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, sep - pos));
    pos = sep + 1;
  }
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

class ModelReader {
 public:
  explicit ModelReader(std::string_view text) {
    std::size_t line_no = 0;
    std::optional<std::size_t> current;
    ForEachLine(text, [&](std::string_view line) {
      ++line_no;
      if (line.starts_with(kSectionPrefix)) {
        std::string_view name = line.substr(kSectionPrefix.size());
        std::size_t expected = current ? *current + 1 : 0;
        if (expected >= kSections.size() || kSections[expected] != name) {
          Fail("expected section " +
                   (expected < kSections.size()
                        ? std::string(kSections[expected])
                        : std::string("<end of file>")) +
                   ", found '" + std::string(name) + "'",
               line_no);
        }
        current = expected;
        return;
      }
      if (!current) Fail("content before the first section", line_no);
      if (line.empty()) return;
      sections_[*current].push_back(Line{line_no, SplitTabs(line)});
    });
    if (!current || *current + 1 != kSections.size()) {
      Fail("truncated model file: missing sections", line_no);
    }
  }

  const std::vector<Line>& section(std::string_view name) const {
    for (std::size_t i = 0; i < kSections.size(); ++i) {
      if (kSections[i] == name) return sections_[i];
    }
    throw std::logic_error("unknown section");
  }

  [[noreturn]] static void Fail(const std::string& message,
                                std::size_t line = 0) {
    throw Error(ErrorCode::kModelFormat, message, line);
  }

  static void Expect(const Line& line, std::size_t fields) {
    if (line.fields.size() != fields) {
      Fail("expected " + std::to_string(fields) + " fields", line.number);
    }
  }

  static std::uint64_t Integer(const Line& line, std::size_t i) {
    std::string_view text = line.fields[i];
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() ||
        text.empty()) {
      Fail("bad integer '" + std::string(text) + "'", line.number);
    }
    return value;
  }

  static double Real(const Line& line, std::size_t i) {
    std::string text(line.fields[i]);
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      Fail("bad number '" + text + "'", line.number);
    }
    return value;
  }

  static std::string Text(const Line& line, std::size_t i) {
    try {
      return Unescape(line.fields[i]);
    } catch (const std::invalid_argument&) {
      Fail("bad escape sequence", line.number);
    }
  }

  static TagId Tag(const TagInventory& inventory, const Line& line,
                   std::size_t i) {
    try {
      return inventory.Lookup(Text(line, i));
    } catch (const Error&) {
      Fail("unknown tag '" + std::string(line.fields[i]) + "'", line.number);
    }
  }

 private:
  std::array<std::vector<Line>, kSections.size()> sections_;
};

}  // namespace

std::string SerializeModel(const TrainedModel& model) {
  const TagInventory& inventory = model.inventory();
  const TransitionModel& transitions = model.transitions();
  const TrainOptions& options = model.options();
  auto tag = [&](TagId id) { return Escape(inventory.name(id)); };

  std::string out;
  Section(out, "HEADER");
  Record(out, "format_version", kModelFormatVersion);
  Record(out, "emission_mode", EmissionModeName(options.emission_mode));
  Record(out, "max_suffix_len", std::to_string(options.max_suffix_len));
  Record(out, "rare_max", std::to_string(options.rare_max));

  Section(out, "LAMBDAS");
  const Lambdas& l = *transitions.lambdas();
  Record(out, FormatDouble(l.trigram), FormatDouble(l.bigram),
         FormatDouble(l.unigram));

  Section(out, "TAGS");
  for (const std::string& name : inventory.tags()) Record(out, Escape(name));

  Section(out, "UNIGRAM");
  for (TagId t = 0; t <= inventory.end(); ++t) {
    if (auto n = transitions.unigram(t)) Record(out, tag(t), std::to_string(n));
  }

  Section(out, "BIGRAM");
  for (const auto& [key, n] : transitions.BigramTable()) {
    Record(out, tag(key.first), tag(key.second), std::to_string(n));
  }

  Section(out, "TRIGRAM");
  for (const auto& [key, n] : transitions.TrigramTable()) {
    const auto& [a, b, c] = key;
    Record(out, tag(a), tag(b), tag(c), std::to_string(n));
  }

  const auto observations = model.emissions().Sorted();
  Section(out, "EMIT");
  for (const auto& [pseudo, stats] : observations) {
    auto parts = SplitUnitSeparator(pseudo);
    for (const auto& [t, n] : stats->tags) {
      Record(out, Escape(parts[0]), Escape(parts[1]), Escape(parts[2]), tag(t),
             std::to_string(n));
    }
  }

  Section(out, "OBSCOUNT");
  for (const auto& [pseudo, stats] : observations) {
    auto parts = SplitUnitSeparator(pseudo);
    Record(out, Escape(parts[0]), Escape(parts[1]), Escape(parts[2]),
           std::to_string(stats->total));
  }

  const SuffixModel& suffixes = model.suffixes();
  Section(out, "TAGPRIOR");
  for (TagId t = 0; t < inventory.size(); ++t) {
    Record(out, tag(t), FormatDouble(suffixes.tag_priors()[t]));
  }

  Section(out, "THETA");
  Record(out, FormatDouble(suffixes.theta()));

  Section(out, "MAXSUFLEN");
  Record(out, std::to_string(suffixes.max_len()));

  Section(out, "SUFFIX");
  for (const auto& [suffix, dist] : suffixes.Sorted()) {
    for (const auto& [t, p] : *dist) {
      Record(out, Escape(suffix), tag(t), FormatDouble(p));
    }
  }
  return out;
}

TrainedModel ParseModel(std::string_view text) {
  ModelReader reader(text);
  using R = ModelReader;

  TrainOptions options;
  {
    const auto& header = reader.section("HEADER");
    if (header.empty() || header.front().fields.size() != 2 ||
        header.front().fields[0] != "format_version") {
      R::Fail("HEADER must start with format_version");
    }
    for (const Line& line : header) {
      R::Expect(line, 2);
      std::string_view key = line.fields[0];
      std::string_view value = line.fields[1];
      if (key == "format_version") {
        if (value != kModelFormatVersion) {
          R::Fail("unsupported format_version '" + std::string(value) +
                      "' (expected " + std::string(kModelFormatVersion) + ")",
                  line.number);
        }
      } else if (key == "emission_mode") {
        try {
          options.emission_mode = ParseEmissionMode(value);
        } catch (const std::invalid_argument& e) {
          R::Fail(e.what(), line.number);
        }
      } else if (key == "max_suffix_len") {
        options.max_suffix_len = R::Integer(line, 1);
      } else if (key == "rare_max") {
        options.rare_max = R::Integer(line, 1);
      } else {
        R::Fail("unknown header key '" + std::string(key) + "'", line.number);
      }
    }
  }

  const auto& lambda_lines = reader.section("LAMBDAS");
  if (lambda_lines.size() != 1) R::Fail("LAMBDAS needs exactly one record");
  R::Expect(lambda_lines[0], 3);
  Lambdas lambdas{R::Real(lambda_lines[0], 0), R::Real(lambda_lines[0], 1),
                  R::Real(lambda_lines[0], 2)};

  std::vector<std::string> tag_names;
  for (const Line& line : reader.section("TAGS")) {
    R::Expect(line, 1);
    tag_names.push_back(R::Text(line, 0));
  }
  TagInventory inventory = [&] {
    try {
      return TagInventory(tag_names);
    } catch (const Error& e) {
      R::Fail(e.what());
    }
  }();
  if (inventory.tags() != tag_names) R::Fail("TAGS must be sorted and unique");

  std::map<TagId, TransitionModel::Count> unigrams;
  for (const Line& line : reader.section("UNIGRAM")) {
    R::Expect(line, 2);
    unigrams[R::Tag(inventory, line, 0)] = R::Integer(line, 1);
  }
  std::map<std::pair<TagId, TagId>, TransitionModel::Count> bigrams;
  for (const Line& line : reader.section("BIGRAM")) {
    R::Expect(line, 3);
    bigrams[{R::Tag(inventory, line, 0), R::Tag(inventory, line, 1)}] =
        R::Integer(line, 2);
  }
  std::map<std::tuple<TagId, TagId, TagId>, TransitionModel::Count> trigrams;
  for (const Line& line : reader.section("TRIGRAM")) {
    R::Expect(line, 4);
    trigrams[{R::Tag(inventory, line, 0), R::Tag(inventory, line, 1),
              R::Tag(inventory, line, 2)}] = R::Integer(line, 3);
  }
  TransitionModel transitions = TransitionModel::FromCounts(
      inventory, unigrams, bigrams, trigrams, lambdas);

  auto pseudo_word = [](const Line& line) {
    ObservationTriplet triplet{R::Text(line, 0), R::Text(line, 1),
                               R::Text(line, 2)};
    try {
      ValidateTriplet(triplet, line.number);
    } catch (const Error& e) {
      R::Fail(e.what(), line.number);
    }
    return PseudoWord(triplet);
  };
  std::map<std::string, std::vector<std::pair<TagId, EmissionModel::Count>>>
      joint;
  for (const Line& line : reader.section("EMIT")) {
    R::Expect(line, 5);
    TagId t = R::Tag(inventory, line, 3);
    if (t >= inventory.size()) R::Fail("boundary tag in EMIT", line.number);
    joint[pseudo_word(line)].emplace_back(t, R::Integer(line, 4));
  }
  std::map<std::string, EmissionModel::Count> totals;
  for (const Line& line : reader.section("OBSCOUNT")) {
    R::Expect(line, 4);
    totals[pseudo_word(line)] = R::Integer(line, 3);
  }
  EmissionModel emissions = EmissionModel::FromCounts(
      inventory.size(), options.emission_mode, joint, totals);

  std::vector<double> priors(inventory.size(), 0.0);
  for (const Line& line : reader.section("TAGPRIOR")) {
    R::Expect(line, 2);
    TagId t = R::Tag(inventory, line, 0);
    if (t >= inventory.size()) R::Fail("boundary tag in TAGPRIOR", line.number);
    priors[t] = R::Real(line, 1);
  }

  const auto& theta_lines = reader.section("THETA");
  if (theta_lines.size() != 1) R::Fail("THETA needs exactly one record");
  R::Expect(theta_lines[0], 1);
  const double theta = R::Real(theta_lines[0], 0);

  const auto& len_lines = reader.section("MAXSUFLEN");
  if (len_lines.size() != 1) R::Fail("MAXSUFLEN needs exactly one record");
  R::Expect(len_lines[0], 1);
  const std::size_t max_len = R::Integer(len_lines[0], 0);
  if (max_len != options.max_suffix_len) {
    R::Fail("MAXSUFLEN disagrees with the header", len_lines[0].number);
  }

  std::map<std::string, SuffixModel::SparseDistribution> ml;
  for (const Line& line : reader.section("SUFFIX")) {
    R::Expect(line, 3);
    TagId t = R::Tag(inventory, line, 1);
    if (t >= inventory.size()) R::Fail("boundary tag in SUFFIX", line.number);
    ml[R::Text(line, 0)].emplace_back(t, R::Real(line, 2));
  }
  SuffixModel suffixes = SuffixModel::FromTables(
      inventory.size(), max_len, theta, std::move(priors), std::move(ml));

  return TrainedModel(std::move(transitions), std::move(emissions),
                      std::move(suffixes), options);
}

void SaveModel(const TrainedModel& model, const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeModel(model));
}

TrainedModel LoadModel(const std::filesystem::path& path) {
  return ParseModel(ReadFile(path));
}

}  // namespace hmmner
