#include "lpq/bitcodec.hpp"

#include <numeric>
#include <string>

#include "lpq/errors.hpp"

namespace lpq {

BitMessage::BitMessage(int width) : width_(width) {
  if (width < 0) throw ContractViolation("BitMessage width must be nonnegative");
  bytes_.assign((width + 7) / 8, 0);
}

BitMessage BitMessage::from_bytes(std::span<const std::uint8_t> bytes, int width) {
  BitMessage msg(width);
  if (bytes.size() != msg.bytes_.size()) {
    throw ContractViolation("BitMessage::from_bytes: byte count does not match width");
  }
  std::copy(bytes.begin(), bytes.end(), msg.bytes_.begin());
  // Padding bits past the width must be zero.
  for (int i = width; i < static_cast<int>(msg.bytes_.size()) * 8; ++i) {
    if ((msg.bytes_[i / 8] >> (7 - i % 8)) & 1u) {
      throw CorruptMessage("BitMessage::from_bytes: nonzero padding bit");
    }
  }
  return msg;
}

void BitMessage::check_range(int offset, int field_width) const {
  if (offset < 0 || field_width < 0 || offset + field_width > width_) {
    throw ContractViolation("BitMessage field out of range: offset " + std::to_string(offset) +
                            " width " + std::to_string(field_width) + " of " +
                            std::to_string(width_));
  }
}

void BitMessage::set_bit(int i, bool v) {
  check_range(i, 1);
  const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
  if (v) {
    bytes_[i / 8] |= mask;
  } else {
    bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
  }
}

bool BitMessage::get_bit(int i) const {
  check_range(i, 1);
  return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
}

void BitMessage::write_field(int offset, int field_width, std::uint64_t value) {
  check_range(offset, field_width);
  if (field_width < 64 && (value >> field_width) != 0) {
    throw ContractViolation("write_field: value does not fit in " +
                            std::to_string(field_width) + " bits");
  }
  for (int b = 0; b < field_width; ++b) {
    set_bit(offset + b, (value >> (field_width - 1 - b)) & 1u);
  }
}

std::uint64_t BitMessage::read_field(int offset, int field_width) const {
  check_range(offset, field_width);
  if (field_width > 64) throw ContractViolation("read_field: width exceeds 64 bits");
  std::uint64_t value = 0;
  for (int b = 0; b < field_width; ++b) {
    value = (value << 1) | static_cast<std::uint64_t>(get_bit(offset + b));
  }
  return value;
}

void BitMessage::write_big_field(int offset, int field_width, const BigUint& value) {
  check_range(offset, field_width);
  if (value.bit_length() > static_cast<std::size_t>(field_width)) {
    throw ContractViolation("write_big_field: value does not fit in " +
                            std::to_string(field_width) + " bits");
  }
  for (int b = 0; b < field_width; ++b) {
    set_bit(offset + b, value.bit(field_width - 1 - b));
  }
}

BigUint BitMessage::read_big_field(int offset, int field_width) const {
  check_range(offset, field_width);
  BigUint value(0);
  for (int b = 0; b < field_width; ++b) {
    if (get_bit(offset + b)) value.set_bit(field_width - 1 - b);
  }
  return value;
}

std::uint32_t MultisetType::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint32_t{0});
}

BigUint multiset_type_count(int d, int k) {
  if (d < 0 || k < 0) throw ContractViolation("multiset_type_count: negative parameter");
  return BigUint::binomial(static_cast<std::uint64_t>(d) + k, k);
}

namespace {

// All binomial updates below move along Pascal's triangle with one exact
// multiply/divide per step:
//   C(n-1, i)   = C(n, i) * (n - i) / n
//   C(n-1, i-1) = C(n, i) * i / n
void step_down_n(BigUint& c, std::uint32_t n, std::uint32_t i) {
  c.mul_u32(n - i);
  c.div_u32(n);
}

void step_down_both(BigUint& c, std::uint32_t n, std::uint32_t i) {
  c.mul_u32(i);
  c.div_u32(n);
}

}  // namespace

// Colex rank: scanning i = d down to 1 with m the count still unplaced, the
// types preceding `type` at position i are those with a smaller counts[i] and
// free lower coordinates; by the hockey-stick identity their number is
// C(i + m, i) - C(i + m - counts[i], i).
BigUint multiset_rank(const MultisetType& type) {
  const int d = type.dim();
  if (d < 0) throw ContractViolation("multiset_rank: empty type");
  const std::uint32_t k = type.total();
  std::uint32_t m = k;
  BigUint rank(0);
  BigUint cur = multiset_type_count(d, static_cast<int>(k));  // C(i + m, i) at i = d
  for (int i = d; i >= 1; --i) {
    const std::uint32_t ti = type.counts[static_cast<std::size_t>(i)];
    if (ti > m) throw ContractViolation("multiset_rank: counts exceed total");
    BigUint hi = cur;
    for (std::uint32_t v = 0; v < ti; ++v) {
      // C(i + m - v - 1, i) from C(i + m - v, i)
      step_down_n(hi, static_cast<std::uint32_t>(i) + m - v, static_cast<std::uint32_t>(i));
    }
    rank += cur - hi;
    m -= ti;
    // Descend to C((i - 1) + m, i - 1) for the next coordinate.
    cur = hi;
    step_down_both(cur, static_cast<std::uint32_t>(i) + m, static_cast<std::uint32_t>(i));
  }
  if (type.counts[0] != m) throw ContractViolation("multiset_rank: inconsistent counts");
  return rank;
}

MultisetType multiset_unrank(const BigUint& rank, int d, int k) {
  if (d < 0 || k < 0) throw ContractViolation("multiset_unrank: negative parameter");
  BigUint remaining = rank;
  BigUint cur = multiset_type_count(d, k);  // C(i + m, i) at i = d
  if (remaining >= cur) throw ContractViolation("multiset_unrank: rank out of range");
  MultisetType type;
  type.counts.assign(static_cast<std::size_t>(d) + 1, 0);
  std::uint32_t m = static_cast<std::uint32_t>(k);
  for (int i = d; i >= 1; --i) {
    // Find the smallest v with remaining < C(i+m, i) - C(i+m-v-1, i); the
    // running `low` is C(i + m - v, i).
    BigUint low = cur;
    std::uint32_t v = 0;
    while (true) {
      BigUint next = low;  // C(i + m - v - 1, i)
      step_down_n(next, static_cast<std::uint32_t>(i) + m - v, static_cast<std::uint32_t>(i));
      if (remaining < cur - next) break;
      low = next;
      ++v;
    }
    type.counts[static_cast<std::size_t>(i)] = v;
    remaining -= cur - low;
    m -= v;
    cur = low;
    step_down_both(cur, static_cast<std::uint32_t>(i) + m, static_cast<std::uint32_t>(i));
  }
  type.counts[0] = m;
  return type;
}

int ceil_log2_u64(std::uint64_t m) {
  if (m == 0) throw ContractViolation("ceil_log2_u64: zero argument");
  int bits = 0;
  std::uint64_t v = m - 1;
  while (v) {
    ++bits;
    v >>= 1;
  }
  return bits;
}

int type_rank_width(int d, int k) {
  BigUint count = multiset_type_count(d, k);
  if (count.is_zero()) throw ContractViolation("type_rank_width: empty type family");
  count -= BigUint(1);
  return static_cast<int>(count.bit_length());  // ceil(log2 C) since ranks reach C - 1
}

}  // namespace lpq
