#include "hmmner/tag_inventory.h"

#include <algorithm>
#include <set>

#include "hmmner/error.h"

namespace hmmner {

TagInventory::TagInventory(std::vector<std::string> tags) {
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  for (const std::string& tag : tags) {
    if (tag == kStartSymbol || tag == kEndSymbol) {
      throw Error(ErrorCode::kInvalidScheme,
                  "boundary symbol " + tag + " used as a corpus tag");
    }
  }
  tags_ = std::move(tags);
  for (TagId i = 0; i < tags_.size(); ++i) index_.emplace(tags_[i], i);
}

TagInventory TagInventory::FromCorpus(const Corpus& corpus) {
  std::set<std::string> seen;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    if (!corpus[s].tagged()) {
      throw Error(ErrorCode::kUntaggedSentence,
                  "sentence " + std::to_string(s) + " carries no NE tags");
    }
    for (const NeTag& tag : corpus[s].tags) seen.insert(tag.ToString());
  }
  return TagInventory(std::vector<std::string>(seen.begin(), seen.end()));
}

std::string_view TagInventory::name(TagId id) const {
  if (id < tags_.size()) return tags_[id];
  if (id == start()) return kStartSymbol;
  if (id == end()) return kEndSymbol;
  throw Error(ErrorCode::kUnknownTag, "tag id " + std::to_string(id));
}

std::optional<TagId> TagInventory::Find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TagId TagInventory::Lookup(std::string_view surface) const {
  if (auto id = Find(surface)) return *id;
  if (surface == kStartSymbol) return start();
  if (surface == kEndSymbol) return end();
  throw Error(ErrorCode::kUnknownTag,
              "tag '" + std::string(surface) + "' not in inventory");
}

}  // namespace hmmner
