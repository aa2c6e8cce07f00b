#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpq/biguint.hpp"

namespace lpq {

// Fixed-width bit string. The width is set at construction and never changes;
// every quantizer message is one of these, so fixed-length coding is enforced
// structurally. Fields are packed big-endian: bit 0 is the most significant
// bit of the first byte.
class BitMessage {
 public:
  explicit BitMessage(int width);
  static BitMessage from_bytes(std::span<const std::uint8_t> bytes, int width);

  int width() const { return width_; }

  void write_field(int offset, int field_width, std::uint64_t value);
  std::uint64_t read_field(int offset, int field_width) const;

  // Wide fields (multiset type ranks routinely exceed 64 bits).
  void write_big_field(int offset, int field_width, const BigUint& value);
  BigUint read_big_field(int offset, int field_width) const;

  void set_bit(int i, bool v);
  bool get_bit(int i) const;

  // Byte serialization, zero-padded with trailing bits; the width is stored
  // out-of-band by the owning quantizer spec.
  std::vector<std::uint8_t> to_bytes() const { return bytes_; }

  bool operator==(const BitMessage& rhs) const = default;

 private:
  void check_range(int offset, int field_width) const;

  int width_ = 0;
  std::vector<std::uint8_t> bytes_;
};

// Frequency vector of a k-draw sequence over the alphabet {0, ..., d}:
// counts[i] is how often index i was drawn, and the counts sum to k.
struct MultisetType {
  std::vector<std::uint32_t> counts;

  int dim() const { return static_cast<int>(counts.size()) - 1; }  // d
  std::uint32_t total() const;                                     // k
};

// Number of types with parameters (d, k): C(d + k, k).
BigUint multiset_type_count(int d, int k);

// Bijection between types and [0, C(d+k, k)), colexicographic on the counts
// vector (counts[d] most significant). multiset_unrank is the exact inverse.
BigUint multiset_rank(const MultisetType& type);
MultisetType multiset_unrank(const BigUint& rank, int d, int k);

// ceil(log2 C(d+k, k)): bits needed to store any rank for parameters (d, k).
int type_rank_width(int d, int k);

// ceil(log2 m) for a positive integer, exact (no floating point).
int ceil_log2_u64(std::uint64_t m);

}  // namespace lpq
