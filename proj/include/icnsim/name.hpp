#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace icnsim {

// Hierarchical content name with an optional chunk index. Immutable; copies
// share the component storage, so names are cheap to pass through the event
// queue.
class ContentName {
 public:
  ContentName() = default;  // empty placeholder, invalid for protocol use

  explicit ContentName(std::vector<std::string> components,
                       std::optional<std::uint32_t> chunk = std::nullopt);

  // Parses "/comp1/comp2#chunk".
  static ContentName parse(const std::string& text);

  const std::vector<std::string>& components() const { return *components_; }
  std::optional<std::uint32_t> chunk() const { return chunk_; }
  bool valid() const { return components_ && !components_->empty(); }

  ContentName with_chunk(std::uint32_t chunk) const;
  ContentName without_chunk() const;
  ContentName child(std::string component) const;

  // Serialized form used in logs and CSV: "/comp1/comp2#chunk".
  std::string to_string() const;

  // Canonical byte stream for hashing: each component followed by a 0x00
  // separator, then 0x01 plus four little-endian chunk bytes when present.
  std::string hash_bytes() const;

  bool operator==(const ContentName& o) const;
  bool operator!=(const ContentName& o) const { return !(*this == o); }
  bool operator<(const ContentName& o) const;

 private:
  std::shared_ptr<const std::vector<std::string>> components_;
  std::optional<std::uint32_t> chunk_;
};

// True iff prefix.components is a leading sublist of candidate.components.
// Chunk indices are ignored on both sides.
bool name_prefix_match(const ContentName& candidate, const ContentName& prefix);

// Splits a file into ceil(file_size / chunk_size) names with chunk indices
// 0..n-1, all sharing the base components. Throws std::invalid_argument on
// zero sizes.
std::vector<ContentName> chunk_names(const ContentName& base,
                                     std::uint64_t file_size_bytes,
                                     std::uint64_t chunk_size_bytes);

// Container hash (independent of the PIT hash models in pit.hpp).
struct NameHasher {
  std::size_t operator()(const ContentName& n) const;
};

}  // namespace icnsim
