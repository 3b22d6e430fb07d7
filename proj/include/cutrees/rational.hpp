#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace cutrees {

using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline rat make_rat(long long p, long long q) {
  if (q == 0) throw std::invalid_argument("rational with zero denominator");
  return rat(p, q);
}

inline rat rat_abs(const rat& x) { return x < 0 ? rat(-x) : x; }
inline const rat& rat_min(const rat& a, const rat& b) { return a < b ? a : b; }
inline const rat& rat_max(const rat& a, const rat& b) { return a < b ? b : a; }

// Serialized form is always "p/q" in lowest terms ("3/10", "0/1", "-1/2").
inline std::string rat_to_string(const rat& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

// Accepts "p/q" or a bare integer "p".
inline rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return rat(bigint(s));
    bigint p(s.substr(0, slash));
    bigint q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return rat(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

// Largest integer n with n <= x.
inline bigint rat_floor(const rat& x) {
  bigint q = numerator(x) / denominator(x);
  if (x < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

inline double rat_to_double(const rat& x) { return x.convert_to<double>(); }

}  // namespace cutrees
