#include "lpq/biguint.hpp"

#include <algorithm>

#include "lpq/errors.hpp"

namespace lpq {

BigUint::BigUint(std::uint64_t v) {
  if (v != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::size_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  std::size_t bits = (limbs_.size() - 1) * 32;
  std::uint32_t top = limbs_.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigUint::bit(std::size_t i) const {
  const std::size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

void BigUint::set_bit(std::size_t i) {
  const std::size_t limb = i / 32;
  if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
  limbs_[limb] |= (std::uint32_t{1} << (i % 32));
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
  if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t sum = carry + limbs_[i];
    if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(sum);
    carry = sum >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
  if (compare(rhs) < 0) throw ContractViolation("BigUint subtraction underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
    if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
    if (diff < 0) {
      diff += (std::int64_t{1} << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    limbs_[i] = static_cast<std::uint32_t>(diff);
  }
  trim();
  return *this;
}

BigUint& BigUint::mul_u32(std::uint32_t m) {
  if (m == 0) {
    limbs_.clear();
    return *this;
  }
  std::uint64_t carry = 0;
  for (auto& limb : limbs_) {
    const std::uint64_t prod = static_cast<std::uint64_t>(limb) * m + carry;
    limb = static_cast<std::uint32_t>(prod);
    carry = prod >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigUint& BigUint::div_u32(std::uint32_t divisor) {
  if (divisor == 0) throw ContractViolation("BigUint division by zero");
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const std::uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return *this;
}

int BigUint::compare(const BigUint& rhs) const {
  if (limbs_.size() != rhs.limbs_.size()) {
    return limbs_.size() < rhs.limbs_.size() ? -1 : 1;
  }
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i] ? -1 : 1;
  }
  return 0;
}

std::uint64_t BigUint::to_u64() const {
  if (bit_length() > 64) throw ContractViolation("BigUint does not fit in 64 bits");
  std::uint64_t v = 0;
  if (!limbs_.empty()) v = limbs_[0];
  if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return v;
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  BigUint tmp = *this;
  std::string digits;
  while (!tmp.is_zero()) {
    BigUint q = tmp;
    q.div_u32(1000000000u);
    BigUint back = q;
    back.mul_u32(1000000000u);
    const std::uint64_t chunk = (tmp - back).to_u64();
    tmp = q;
    const std::string part = std::to_string(chunk);
    if (tmp.is_zero()) {
      digits = part + digits;
    } else {
      digits = std::string(9 - part.size(), '0') + part + digits;
    }
  }
  return digits;
}

BigUint BigUint::binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return BigUint(0);
  if (n > 0xffffffffULL) throw ContractViolation("binomial: n exceeds 32-bit factor range");
  if (r > n - r) r = n - r;
  BigUint result(1);
  for (std::uint64_t i = 1; i <= r; ++i) {
    result.mul_u32(static_cast<std::uint32_t>(n - r + i));
    result.div_u32(static_cast<std::uint32_t>(i));  // exact at every step
  }
  return result;
}

}  // namespace lpq
