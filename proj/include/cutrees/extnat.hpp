#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace cutrees {

// Value in N u {inf}. Addition saturates at inf.
class ext_nat {
 public:
  constexpr ext_nat() = default;
  constexpr explicit ext_nat(std::uint32_t n) : v_(n) {}
  static constexpr ext_nat inf() { return ext_nat(kInf, tag{}); }

  constexpr bool is_inf() const { return v_ == kInf; }
  // Finite value; caller must check is_inf() first.
  constexpr std::uint32_t finite() const { return v_; }

  friend constexpr bool operator==(ext_nat a, ext_nat b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ext_nat a, ext_nat b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(ext_nat a, ext_nat b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ext_nat a, ext_nat b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ext_nat a, ext_nat b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ext_nat a, ext_nat b) { return a.v_ >= b.v_; }

  friend constexpr ext_nat operator+(ext_nat a, ext_nat b) {
    if (a.is_inf() || b.is_inf()) return inf();
    std::uint64_t s = std::uint64_t(a.v_) + b.v_;
    return s >= kInf ? inf() : ext_nat(std::uint32_t(s));
  }

  friend constexpr ext_nat min(ext_nat a, ext_nat b) { return a < b ? a : b; }
  friend constexpr ext_nat max(ext_nat a, ext_nat b) { return a < b ? b : a; }

  std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

 private:
  struct tag {};
  constexpr ext_nat(std::uint32_t n, tag) : v_(n) {}
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t v_ = 0;
};

inline constexpr ext_nat operator""_n(unsigned long long n) {
  return ext_nat(static_cast<std::uint32_t>(n));
}

}  // namespace cutrees
