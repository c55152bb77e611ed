#include "icnsim/name.hpp"

#include <functional>
#include <stdexcept>

namespace icnsim {

ContentName::ContentName(std::vector<std::string> components,
                         std::optional<std::uint32_t> chunk)
    : components_(std::make_shared<const std::vector<std::string>>(
          std::move(components))),
      chunk_(chunk) {
  if (components_->empty()) {
    throw std::invalid_argument("ContentName: component list must be non-empty");
  }
  for (const auto& c : *components_) {
    if (c.empty()) {
      throw std::invalid_argument("ContentName: components must be non-empty");
    }
  }
}

ContentName ContentName::parse(const std::string& text) {
  std::string body = text;
  std::optional<std::uint32_t> chunk;
  if (auto pos = body.rfind('#'); pos != std::string::npos) {
    chunk = static_cast<std::uint32_t>(std::stoul(body.substr(pos + 1)));
    body = body.substr(0, pos);
  }
  std::vector<std::string> comps;
  std::size_t i = 0;
  if (!body.empty() && body[0] == '/') i = 1;
  while (i < body.size()) {
    auto next = body.find('/', i);
    if (next == std::string::npos) next = body.size();
    comps.push_back(body.substr(i, next - i));
    i = next + 1;
  }
  return ContentName(std::move(comps), chunk);
}

ContentName ContentName::with_chunk(std::uint32_t chunk) const {
  ContentName n = *this;
  n.chunk_ = chunk;
  return n;
}

ContentName ContentName::without_chunk() const {
  ContentName n = *this;
  n.chunk_.reset();
  return n;
}

ContentName ContentName::child(std::string component) const {
  std::vector<std::string> comps = components();
  comps.push_back(std::move(component));
  return ContentName(std::move(comps), chunk_);
}

std::string ContentName::to_string() const {
  std::string out;
  for (const auto& c : components()) {
    out += '/';
    out += c;
  }
  if (chunk_) {
    out += '#';
    out += std::to_string(*chunk_);
  }
  return out;
}

std::string ContentName::hash_bytes() const {
  std::string out;
  for (const auto& c : components()) {
    out += c;
    out += '\0';
  }
  if (chunk_) {
    out += '\1';
    std::uint32_t v = *chunk_;
    for (int i = 0; i < 4; ++i) {
      out += static_cast<char>(v & 0xff);
      v >>= 8;
    }
  }
  return out;
}

bool ContentName::operator==(const ContentName& o) const {
  if (chunk_ != o.chunk_) return false;
  if (components_ == o.components_) return true;
  if (!components_ || !o.components_) return false;
  return *components_ == *o.components_;
}

bool ContentName::operator<(const ContentName& o) const {
  if (components_ != o.components_) {
    const auto& a = components_ ? *components_ : std::vector<std::string>{};
    const auto& b = o.components_ ? *o.components_ : std::vector<std::string>{};
    if (a != b) return a < b;
  }
  std::uint64_t ca = chunk_ ? 1ull + *chunk_ : 0;
  std::uint64_t cb = o.chunk_ ? 1ull + *o.chunk_ : 0;
  return ca < cb;
}

bool name_prefix_match(const ContentName& candidate, const ContentName& prefix) {
  const auto& p = prefix.components();
  const auto& c = candidate.components();
  if (p.size() > c.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != c[i]) return false;
  }
  return true;
}

std::vector<ContentName> chunk_names(const ContentName& base,
                                     std::uint64_t file_size_bytes,
                                     std::uint64_t chunk_size_bytes) {
  if (file_size_bytes == 0 || chunk_size_bytes == 0) {
    throw std::invalid_argument("chunk_names: sizes must be positive");
  }
  std::uint64_t n = (file_size_bytes + chunk_size_bytes - 1) / chunk_size_bytes;
  std::vector<ContentName> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(base.with_chunk(static_cast<std::uint32_t>(i)));
  }
  return out;
}

std::size_t NameHasher::operator()(const ContentName& n) const {
  return std::hash<std::string>{}(n.hash_bytes());
}

}  // namespace icnsim
