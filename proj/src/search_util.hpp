// Hashing helpers for search keys.
#ifndef VALENCE_SRC_SEARCH_UTIL_HPP
#define VALENCE_SRC_SEARCH_UTIL_HPP

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valence::detail {

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct PairHash {
  template <typename A, typename B>
  std::size_t operator()(const std::pair<A, B>& p) const {
    return hash_mix(std::hash<A>{}(p.first), std::hash<B>{}(p.second));
  }
};

struct VectorHash {
  template <typename T>
  std::size_t operator()(const std::vector<T>& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = hash_mix(h, std::hash<T>{}(x));
    return h;
  }
};

// Set of fixed-width byte keys in one arena with open addressing. Keys are
// addressed by insertion index.
class PackedSet {
 public:
  explicit PackedSet(std::size_t width) : width_(width), slots_(1024, 0) {}

  std::size_t size() const { return count_; }
  const unsigned char* key(std::size_t i) const { return arena_.data() + i * width_; }

  // (index, inserted)
  std::pair<std::size_t, bool> insert(const unsigned char* k) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    auto at = probe(k);
    if (slots_[at]) return {slots_[at] - 1, false};
    arena_.insert(arena_.end(), k, k + width_);
    slots_[at] = static_cast<std::uint32_t>(++count_);
    return {count_ - 1, true};
  }

 private:
  std::size_t hash(const unsigned char* k) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(k), width_));
  }
  std::size_t probe(const unsigned char* k) const {
    std::size_t mask = slots_.size() - 1, at = hash(k) & mask;
    while (slots_[at] && std::memcmp(key(slots_[at] - 1), k, width_) != 0) at = (at + 1) & mask;
    return at;
  }
  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, 0);
    old.swap(slots_);
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t at = hash(key(i)) & mask;
      while (slots_[at]) at = (at + 1) & mask;
      slots_[at] = static_cast<std::uint32_t>(i + 1);
    }
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<unsigned char> arena_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace valence::detail

#endif  // VALENCE_SRC_SEARCH_UTIL_HPP
