#ifndef HMMNER_EVALUATOR_H_
#define HMMNER_EVALUATOR_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "hmmner/corpus.h"

namespace hmmner {

enum class MatchMode {
  // Exact (category, start, end) span matches, micro-averaged.
  kSpan,
  // Per-token category agreement; diagnostic only.
  kToken,
};

MatchMode ParseMatchMode(std::string_view name);

struct Score {
  std::uint64_t true_positives = 0;
  std::uint64_t predicted = 0;
  std::uint64_t gold = 0;

  double precision() const;
  double recall() const;
  double f_measure() const;

  Score& operator+=(const Score& other);
};

struct EvalReport {
  std::map<std::string, Score> categories;
  Score overall;
};

// Gold spans are read strictly, predictions leniently. Throws
// kCorpusMismatch naming the first sentence whose length or tokens differ,
// and kInvalidScheme for malformed gold.
EvalReport Evaluate(const Corpus& gold, const Corpus& predicted,
                    MatchMode mode = MatchMode::kSpan);

// Aligned table for people.
std::string FormatReportText(const EvalReport& report);
// CATEGORY\tTP\tPRED\tGOLD\tP\tR\tF rows, overall last as ALL; scores to 4
// decimals.
std::string FormatReportTsv(const EvalReport& report);

}  // namespace hmmner

#endif  // HMMNER_EVALUATOR_H_
