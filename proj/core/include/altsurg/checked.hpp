#pragma once

#include <cstdint>

#include "altsurg/errors.hpp"

namespace altsurg {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
  return r;
}

inline std::int64_t narrow_checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("value does not fit in int64");
  return static_cast<std::int64_t>(v);
}

/// Floor division for signed operands, b != 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace altsurg
