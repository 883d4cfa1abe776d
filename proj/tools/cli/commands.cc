#include "cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "hmmner/corpus.h"
#include "hmmner/decoder.h"
#include "hmmner/error.h"
#include "hmmner/evaluator.h"
#include "hmmner/file_io.h"
#include "hmmner/model_io.h"
#include "hmmner/suffix_model.h"

namespace hmmner::cli {
namespace {

constexpr const char* kVersion = "hmmner " HMMNER_VERSION;

// Raised inside commands to pin an exit status on a library error.
struct Failure {
  int status;
  std::string message;
};

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateCorpus:
    case ErrorCode::kNoRareWords:
      return kDegenerateCorpus;
    case ErrorCode::kModelFormat:
      return kModelError;
    case ErrorCode::kCorpusMismatch:
      return kEvalMismatch;
    default:
      return kParseError;
  }
}

[[noreturn]] void Fail(const std::string& path, const Error& e,
                       std::optional<int> status = std::nullopt) {
  throw Failure{status.value_or(StatusFor(e.code())), path + ": " + e.what()};
}

Corpus ReadTsv(const std::string& path) {
  try {
    return ParseTsv(ReadFile(path));
  } catch (const Error& e) {
    Fail(path, e, kParseError);
  }
}

bool HasEndTags(const Sentence& sentence) {
  return std::any_of(sentence.tags.begin(), sentence.tags.end(),
                     [](const NeTag& t) { return t.kind == TagKind::kE; });
}

struct ConvertArgs {
  std::string input;
  std::string output;
  std::string format = "tsv";
};

void Convert(const ConvertArgs& args, std::ostream& out) {
  Corpus corpus;
  try {
    std::string text = ReadFile(args.input);
    corpus = args.format == "ssf" ? ParseSsf(text) : ParseTsv(text);
  } catch (const Error& e) {
    Fail(args.input, e, kParseError);
  }
  for (Sentence& sentence : corpus) {
    if (sentence.tagged() && !HasEndTags(sentence)) {
      sentence.tags = AugmentEndTags(sentence.tags);
    }
  }
  try {
    WriteFileAtomic(args.output, SerializeTsv(corpus));
  } catch (const Error& e) {
    Fail(args.output, e, kParseError);
  }
  out << "sentences\t" << corpus.size() << "\ntokens\t" << TokenCount(corpus)
      << '\n';
}

struct TrainArgs {
  std::string corpus;
  std::string model;
  std::optional<std::size_t> suffix_len;
  std::uint64_t rare_max = kDefaultRareMax;
  std::string emission = "paper";
  std::string lang;
};

void Train(const TrainArgs& args, std::ostream& out) {
  Corpus corpus = ReadTsv(args.corpus);

  TrainOptions options;
  options.emission_mode = ParseEmissionMode(args.emission);
  options.rare_max = args.rare_max;
  options.max_suffix_len = kDefaultSuffixLength;
  if (!args.lang.empty()) {
    options.max_suffix_len = *SuffixLengthForLanguage(args.lang);
  }
  if (args.suffix_len) options.max_suffix_len = *args.suffix_len;

  std::optional<TrainedModel> model;
  try {
    model.emplace(TrainedModel::Train(corpus, options));
  } catch (const Error& e) {
    Fail(args.corpus, e);
  }
  try {
    SaveModel(*model, args.model);
  } catch (const Error& e) {
    Fail(args.model, e, kModelError);
  }

  std::set<std::string> categories;
  for (const Sentence& s : corpus) {
    for (const NeTag& t : s.tags) {
      if (!t.is_outside()) categories.insert(t.category);
    }
  }
  const Lambdas& l = *model->transitions().lambdas();
  out << "sentences\t" << corpus.size() << '\n'
      << "tokens\t" << TokenCount(corpus) << '\n'
      << "tags\t" << model->tag_count() << '\n'
      << "ne_types\t" << categories.size() << '\n'
      << "emission_mode\t" << EmissionModeName(options.emission_mode) << '\n'
      << "max_suffix_len\t" << options.max_suffix_len << '\n'
      << "rare_max\t" << options.rare_max << '\n'
      << "lambdas\t" << l.trigram << '\t' << l.bigram << '\t' << l.unigram
      << '\n'
      << "theta\t" << model->suffixes().theta() << '\n';
}

struct TagArgs {
  std::string model;
  std::string input;
  std::string output;
  std::size_t threads = 1;
  bool strip = false;
  std::string end_transition = "trigram";
};

void Tag(const TagArgs& args, std::ostream& out) {
  std::optional<TrainedModel> model;
  try {
    model.emplace(LoadModel(args.model));
  } catch (const Error& e) {
    Fail(args.model, e, kModelError);
  }
  Corpus corpus = ReadTsv(args.input);

  DecodeOptions options;
  options.end_transition = args.end_transition == "bigram"
                               ? EndTransition::kBigram
                               : EndTransition::kTrigram;
  Corpus tagged;
  try {
    tagged = TagCorpus(*model, corpus, options, args.threads);
  } catch (const Error& e) {
    Fail(args.input, e);
  }
  try {
    WriteFileAtomic(args.output, args.strip ? SerializeTsvStripped(tagged)
                                            : SerializeTsv(tagged));
  } catch (const Error& e) {
    Fail(args.output, e, kParseError);
  }
  out << "sentences\t" << tagged.size() << "\ntokens\t" << TokenCount(tagged)
      << '\n';
}

struct EvalArgs {
  std::string gold;
  std::string predicted;
  std::string mode = "span";
};

void Eval(const EvalArgs& args, std::ostream& out) {
  Corpus gold = ReadTsv(args.gold);
  Corpus predicted = ReadTsv(args.predicted);
  EvalReport report;
  try {
    report = Evaluate(gold, predicted, ParseMatchMode(args.mode));
  } catch (const Error& e) {
    Fail(args.predicted, e);
  }
  out << FormatReportText(report) << '\n' << FormatReportTsv(report);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Trigram HMM named-entity tagger over <word, POS, chunk> "
               "observations.",
               "hmmner"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ConvertArgs convert_args;
  CLI::App* convert = app.add_subcommand(
      "convert", "Convert an SSF or TSV corpus into canonical B/I/E/O TSV.");
  convert->add_option("input", convert_args.input, "Input corpus")
      ->required();
  convert->add_option("output", convert_args.output, "Output TSV")->required();
  convert
      ->add_option("-f,--format", convert_args.format,
                   "Input format: ssf or tsv")
      ->check(CLI::IsMember({"ssf", "tsv"}))
      ->capture_default_str();

  TrainArgs train_args;
  CLI::App* train =
      app.add_subcommand("train", "Train a model from a tagged TSV corpus.");
  train->add_option("corpus", train_args.corpus, "Tagged TSV corpus")
      ->required();
  train->add_option("model", train_args.model, "Model file to write")
      ->required();
  train->add_option("--suffix-len", train_args.suffix_len,
                    "Maximum pseudo-word suffix length (overrides --lang)")
      ->check(CLI::PositiveNumber);
  train
      ->add_option("--rare-max", train_args.rare_max,
                   "Observations seen at most this often feed the suffix "
                   "model")
      ->capture_default_str();
  train
      ->add_option("--emission", train_args.emission,
                   "Known-observation scoring: paper (C(o,t)/C(o)) or "
                   "standard (C(o,t)/C(t))")
      ->check(CLI::IsMember({"paper", "paper_faithful", "standard"}))
      ->capture_default_str();
  train
      ->add_option("--lang", train_args.lang,
                   "Language preset for the suffix length: bengali (8), "
                   "english, hindi, marathi, punjabi (9), tamil (16), "
                   "telugu (13); default length is 10")
      ->check([](const std::string& value) -> std::string {
        return SuffixLengthForLanguage(value) ? ""
                                              : "unknown language " + value;
      });

  TagArgs tag_args;
  CLI::App* tag = app.add_subcommand(
      "tag", "Tag a TSV corpus. Existing NE columns are ignored.");
  tag->add_option("model", tag_args.model, "Model file")->required();
  tag->add_option("input", tag_args.input, "Input TSV")->required();
  tag->add_option("output", tag_args.output, "Output TSV")->required();
  tag->add_option("-j,--threads", tag_args.threads, "Decoding threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tag->add_flag("--strip", tag_args.strip,
                "Write only the word and NE columns");
  tag->add_option("--end-transition", tag_args.end_transition,
                  "Sentence-final transition: trigram or bigram")
      ->check(CLI::IsMember({"trigram", "bigram"}))
      ->capture_default_str();

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Score a predicted TSV corpus against gold.");
  eval->add_option("gold", eval_args.gold, "Gold TSV")->required();
  eval->add_option("predicted", eval_args.predicted, "Predicted TSV")
      ->required();
  eval->add_option("--mode", eval_args.mode, "Matching: span or token")
      ->check(CLI::IsMember({"span", "token"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e, out, err);
    return status == 0 ? kOk : kUsage;
  }

  try {
    if (convert->parsed()) Convert(convert_args, out);
    if (train->parsed()) Train(train_args, out);
    if (tag->parsed()) Tag(tag_args, out);
    if (eval->parsed()) Eval(eval_args, out);
  } catch (const Failure& f) {
    err << "hmmner: " << f.message << '\n';
    return f.status;
  } catch (const Error& e) {
    err << "hmmner: " << e.what() << '\n';
    return StatusFor(e.code());
  }
  return kOk;
}

}  // namespace hmmner::cli
