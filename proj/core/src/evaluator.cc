#include "hmmner/evaluator.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <tuple>

#include "hmmner/error.h"

namespace hmmner {
namespace {

double Ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void CheckAligned(const Corpus& gold, const Corpus& predicted) {
  if (gold.size() != predicted.size()) {
    throw Error(ErrorCode::kCorpusMismatch,
                "gold has " + std::to_string(gold.size()) +
                    " sentences, prediction has " +
                    std::to_string(predicted.size()) +
                    "; first divergent sentence " +
                    std::to_string(std::min(gold.size(), predicted.size())));
  }
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].tokens != predicted[s].tokens) {
      throw Error(ErrorCode::kCorpusMismatch,
                  "sentence " + std::to_string(s) + " differs in tokens");
    }
    if (!gold[s].tagged() || !predicted[s].tagged()) {
      throw Error(ErrorCode::kCorpusMismatch,
                  "sentence " + std::to_string(s) + " is untagged");
    }
  }
}

std::string Fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

MatchMode ParseMatchMode(std::string_view name) {
  if (name == "span") return MatchMode::kSpan;
  if (name == "token") return MatchMode::kToken;
  throw std::invalid_argument("unknown match mode '" + std::string(name) +
                              "'");
}

double Score::precision() const { return Ratio(true_positives, predicted); }
double Score::recall() const { return Ratio(true_positives, gold); }

double Score::f_measure() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Score& Score::operator+=(const Score& other) {
  true_positives += other.true_positives;
  predicted += other.predicted;
  gold += other.gold;
  return *this;
}

EvalReport Evaluate(const Corpus& gold, const Corpus& predicted,
                    MatchMode mode) {
  CheckAligned(gold, predicted);
  EvalReport report;

  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (mode == MatchMode::kToken) {
      const auto& g = gold[s].tags;
      const auto& p = predicted[s].tags;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_outside()) ++report.categories[g[i].category].gold;
        if (!p[i].is_outside()) {
          Score& score = report.categories[p[i].category];
          ++score.predicted;
          if (g[i].category == p[i].category) ++score.true_positives;
        }
      }
      continue;
    }

    std::vector<EntitySpan> gold_spans =
        TagsToSpans(gold[s].tags, SpanMode::kStrict);
    std::vector<EntitySpan> pred_spans =
        TagsToSpans(predicted[s].tags, SpanMode::kLenient);
    std::set<std::tuple<std::string, std::size_t, std::size_t>> gold_set;
    for (const EntitySpan& span : gold_spans) {
      ++report.categories[span.category].gold;
      gold_set.emplace(span.category, span.start, span.end);
    }
    for (const EntitySpan& span : pred_spans) {
      Score& score = report.categories[span.category];
      ++score.predicted;
      if (gold_set.contains({span.category, span.start, span.end})) {
        ++score.true_positives;
      }
    }
  }

  for (const auto& [category, score] : report.categories) {
    report.overall += score;
  }
  return report;
}

std::string FormatReportText(const EvalReport& report) {
  std::size_t width = 8;
  for (const auto& [category, score] : report.categories) {
    width = std::max(width, category.size());
  }
  std::string out;
  char buf[256];
  auto row = [&](const std::string& name, const Score& s) {
    std::snprintf(buf, sizeof(buf), "%-*s %8llu %8llu %8llu %9.4f %9.4f %9.4f\n",
                  static_cast<int>(width), name.c_str(),
                  static_cast<unsigned long long>(s.true_positives),
                  static_cast<unsigned long long>(s.predicted),
                  static_cast<unsigned long long>(s.gold), s.precision(),
                  s.recall(), s.f_measure());
    out += buf;
  };
  std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %9s %9s %9s\n",
                static_cast<int>(width), "category", "tp", "pred", "gold",
                "precision", "recall", "f");
  out += buf;
  for (const auto& [category, score] : report.categories) row(category, score);
  row("overall", report.overall);
  return out;
}

std::string FormatReportTsv(const EvalReport& report) {
  std::string out = "CATEGORY\tTP\tPRED\tGOLD\tP\tR\tF\n";
  auto row = [&](const std::string& name, const Score& s) {
    out += name + '\t' + std::to_string(s.true_positives) + '\t' +
           std::to_string(s.predicted) + '\t' + std::to_string(s.gold) + '\t' +
           Fixed4(s.precision()) + '\t' + Fixed4(s.recall()) + '\t' +
           Fixed4(s.f_measure()) + '\n';
  };
  for (const auto& [category, score] : report.categories) row(category, score);
  row("ALL", report.overall);
  return out;
}

}  // namespace hmmner
