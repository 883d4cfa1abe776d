#ifndef HMMNER_MODEL_IO_H_
#define HMMNER_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "hmmner/decoder.h"

namespace hmmner {

// Sectioned, line-oriented UTF-8 text. Sections appear in this fixed order,
// each introduced by a "#SECTION NAME" line:
//
//   HEADER     key<TAB>value (format_version first)
//   LAMBDAS    l1<TAB>l2<TAB>l3
//   TAGS       one tag per line, in id order
//   UNIGRAM    tag<TAB>count
//   BIGRAM     tag<TAB>tag<TAB>count
//   TRIGRAM    tag<TAB>tag<TAB>tag<TAB>count
//   EMIT       word<TAB>pos<TAB>chunk<TAB>tag<TAB>count
//   OBSCOUNT   word<TAB>pos<TAB>chunk<TAB>count
//   TAGPRIOR   tag<TAB>probability
//   THETA      theta
//   MAXSUFLEN  length
//   SUFFIX     suffix<TAB>tag<TAB>ML probability (nonzero entries only)
//
// Floats use 17 significant digits; strings escape '\' and U+001F as "\\"
// and "\x1f". Records are sorted, so equal models serialize identically.
std::string SerializeModel(const TrainedModel& model);

// Throws Error(kModelFormat) on any structural problem, including an
// unknown format_version.
TrainedModel ParseModel(std::string_view text);

void SaveModel(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel LoadModel(const std::filesystem::path& path);

}  // namespace hmmner

#endif  // HMMNER_MODEL_IO_H_
