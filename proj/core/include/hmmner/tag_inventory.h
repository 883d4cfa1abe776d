#ifndef HMMNER_TAG_INVENTORY_H_
#define HMMNER_TAG_INVENTORY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hmmner/corpus.h"

namespace hmmner {

using TagId = std::uint32_t;

// Boundary symbols. They cannot collide with NE tag surface forms.
inline constexpr std::string_view kStartSymbol = "<START>";
inline constexpr std::string_view kEndSymbol = "<END>";

// Dense, stable numbering of the NE tags seen in training. Corpus tags take
// ids 0..size()-1 in byte-lexicographic order of their surface form; START is
// size() and END is size()+1.
class TagInventory {
 public:
  TagInventory() = default;
  explicit TagInventory(std::vector<std::string> tags);

  // Throws kUntaggedSentence if any sentence has no tags.
  static TagInventory FromCorpus(const Corpus& corpus);

  std::size_t size() const { return tags_.size(); }
  TagId start() const { return static_cast<TagId>(tags_.size()); }
  TagId end() const { return static_cast<TagId>(tags_.size() + 1); }

  // Surface string for corpus tags and the boundary symbols.
  std::string_view name(TagId id) const;

  std::optional<TagId> Find(std::string_view surface) const;
  // Accepts boundary symbols too; throws kUnknownTag otherwise.
  TagId Lookup(std::string_view surface) const;

  const std::vector<std::string>& tags() const { return tags_; }

  friend bool operator==(const TagInventory& a, const TagInventory& b) {
    return a.tags_ == b.tags_;
  }

 private:
  std::vector<std::string> tags_;
  std::unordered_map<std::string, TagId> index_;
};

}  // namespace hmmner

#endif  // HMMNER_TAG_INVENTORY_H_
