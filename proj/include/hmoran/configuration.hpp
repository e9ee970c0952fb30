#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hmoran/graph.hpp"

namespace hmoran {

/// The mutant set X as a bit set over [0, n).
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Configuration from_nodes(std::size_t n, std::span<const NodeId> nodes);
  /// Low n bits of `mask`; n <= 64.
  static Configuration from_mask(std::size_t n, std::uint64_t mask);
  static Configuration full(std::size_t n);

  std::size_t universe_size() const noexcept { return n_; }
  std::size_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool is_full() const noexcept { return count_ == n_; }
  bool absorbing() const noexcept { return empty() || is_full(); }

  bool contains(NodeId u) const { return (words_[u >> 6] >> (u & 63)) & 1ULL; }
  void assign(NodeId u, bool mutant) {
    if (contains(u) == mutant) return;
    words_[u >> 6] ^= 1ULL << (u & 63);
    count_ = mutant ? count_ + 1 : count_ - 1;
  }
  void insert(NodeId u) { assign(u, true); }
  void erase(NodeId u) { assign(u, false); }

  std::uint64_t mask() const;
  std::vector<NodeId> nodes() const;

  bool operator==(const Configuration& other) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hmoran
