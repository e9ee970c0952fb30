#include "hmoran/configuration.hpp"

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

Configuration Configuration::from_nodes(std::size_t n, std::span<const NodeId> nodes) {
  Configuration c(n);
  for (NodeId u : nodes) {
    if (u >= n) throw Error(ErrorCode::BadInput, fmt::format("node {} outside [0, {})", u, n));
    c.insert(u);
  }
  return c;
}

Configuration Configuration::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw Error(ErrorCode::TooLarge, "mask configurations hold at most 64 nodes");
  Configuration c(n);
  for (NodeId u = 0; u < n; ++u) {
    if ((mask >> u) & 1ULL) c.insert(u);
  }
  return c;
}

Configuration Configuration::full(std::size_t n) {
  Configuration c(n);
  for (NodeId u = 0; u < n; ++u) c.insert(u);
  return c;
}

std::uint64_t Configuration::mask() const {
  if (n_ > 64) throw Error(ErrorCode::TooLarge, "configuration does not fit a 64-bit mask");
  return words_.empty() ? 0 : words_[0];
}

std::vector<NodeId> Configuration::nodes() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  for (NodeId u = 0; u < n_; ++u) {
    if (contains(u)) out.push_back(u);
  }
  return out;
}

}  // namespace hmoran
