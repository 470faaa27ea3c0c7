#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cobound {

/// Fixed-length packed bit vector over GF(2).
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  static BitVector from_indices(std::size_t size, std::span<const std::size_t> indices);

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  void assign(std::size_t i, bool v) noexcept {
    if (v)
      set(i);
    else
      reset(i);
  }
  void clear() noexcept;

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;

  /// Index of the lowest set bit at or after `from`; size() when none.
  std::size_t find_next(std::size_t from) const noexcept;
  std::size_t find_first() const noexcept { return find_next(0); }

  std::vector<std::size_t> indices() const;

  BitVector& operator^=(const BitVector& other) noexcept;
  BitVector& operator&=(const BitVector& other) noexcept;
  BitVector& operator|=(const BitVector& other) noexcept;

  /// Parity of |this AND other|.
  bool dot(const BitVector& other) const noexcept;
  bool is_subset_of(const BitVector& other) const noexcept;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  static std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

inline BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
inline BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
inline BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

}  // namespace cobound
