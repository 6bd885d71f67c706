#pragma once

#include <cstdint>
#include <numeric>

namespace venncalib {

// Exact integer ratio num/den with den > 0. Comparisons cross-multiply in
// 128-bit, so they stay exact for any counts this library produces.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Ratio normalized() const {
    const std::int64_t g = std::gcd(num, den);
    return g > 1 ? Ratio{num / g, den / g} : *this;
  }

  friend bool operator==(Ratio a, Ratio b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator!=(Ratio a, Ratio b) { return !(a == b); }
  friend bool operator<(Ratio a, Ratio b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(Ratio a, Ratio b) { return b < a; }
  friend bool operator<=(Ratio a, Ratio b) { return !(b < a); }
  friend bool operator>=(Ratio a, Ratio b) { return !(a < b); }
};

// |a - b| as an exact ratio.
inline Ratio ratio_abs_diff(Ratio a, Ratio b) {
  __int128 num = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
  if (num < 0) num = -num;
  const __int128 den = static_cast<__int128>(a.den) * b.den;
  // Counts in this library are small (dataset sizes), so the reduced values
  // fit back into 64 bits.
  Ratio d{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
  return d.normalized();
}

}  // namespace venncalib
