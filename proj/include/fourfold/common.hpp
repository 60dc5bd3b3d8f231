#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fourfold {

/// Exact rational scalar used for every curvature, bound and alpha value.
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

/// Three-valued answer for properties the catalog may not decide.
enum class Tri : std::uint8_t { No, Yes, Unknown };

std::string_view to_string(Tri t);
Tri tri_from_bool(bool b);

// Logical combinations used when folding connected-sum summands.
Tri tri_all(Tri a, Tri b);

// ---------------------------------------------------------------------------
// Error hierarchy. Every failure surfaced to callers derives from Error so the
// CLI can map it to an exit code in one place.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual std::string_view kind() const = 0;
};

#define FOURFOLD_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(what) {}            \
    std::string_view kind() const override { return #Name; }           \
  }

FOURFOLD_DECLARE_ERROR(DomainError);
FOURFOLD_DECLARE_ERROR(UnsupportedExpression);
FOURFOLD_DECLARE_ERROR(ConsistencyError);
FOURFOLD_DECLARE_ERROR(BoundUnavailable);
FOURFOLD_DECLARE_ERROR(DegenerateForm);
FOURFOLD_DECLARE_ERROR(ScaleError);
FOURFOLD_DECLARE_ERROR(NotSimplyConnected);
FOURFOLD_DECLARE_ERROR(MissingData);
FOURFOLD_DECLARE_ERROR(PreconditionViolation);

#undef FOURFOLD_DECLARE_ERROR

// Overflow-checked integer arithmetic; throws DomainError on overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Floor-free modulus with a non-negative result.
constexpr std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace fourfold
