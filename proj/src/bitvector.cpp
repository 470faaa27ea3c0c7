#include "cobound/bitvector.hpp"

#include <algorithm>
#include <cassert>

namespace cobound {

BitVector BitVector::from_indices(std::size_t size, std::span<const std::size_t> indices) {
  BitVector v(size);
  for (std::size_t i : indices) v.set(i);
  return v;
}

void BitVector::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t BitVector::count() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVector::find_next(std::size_t from) const noexcept {
  if (from >= size_) return size_;
  std::size_t wi = from / kWordBits;
  Word w = words_[wi] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (w != 0) return std::min(size_, wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
    if (++wi == words_.size()) return size_;
    w = words_[wi];
  }
}

std::vector<std::size_t> BitVector::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = find_first(); i < size_; i = find_next(i + 1)) out.push_back(i);
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool BitVector::dot(const BitVector& other) const noexcept {
  assert(size_ == other.size_);
  Word acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

bool BitVector::is_subset_of(const BitVector& other) const noexcept {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

}  // namespace cobound
