#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "rimcert/errors.hpp"

namespace rimcert {

using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& value) { return value.str(); }

inline bool fits_int64(const Integer& value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& value) {
  if (!fits_int64(value)) {
    throw ArithmeticOverflow("integer " + value.str() + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticOverflow("int64 addition overflow");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticOverflow("int64 multiplication overflow");
  return out;
}

// JSON carries integers as numbers when they fit in 64 bits, as decimal
// strings otherwise.
inline nlohmann::json integer_to_json(const Integer& value) {
  if (fits_int64(value)) return static_cast<std::int64_t>(value);
  return value.str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    try {
      return Integer(s);
    } catch (const std::exception&) {
      throw ParseError("malformed integer string '" + s + "'", 0);
    }
  }
  throw ParseError("expected an integer, got " + j.dump(), 0);
}

}  // namespace rimcert
