#include "fourfold/common.hpp"

namespace fourfold {

std::string to_string(const Rational& q) {
  return q.str();
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::No:
      return "no";
    case Tri::Yes:
      return "yes";
    case Tri::Unknown:
      break;
  }
  return "unknown";
}

Tri tri_from_bool(bool b) {
  return b ? Tri::Yes : Tri::No;
}

Tri tri_all(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Yes && b == Tri::Yes) return Tri::Yes;
  return Tri::Unknown;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow in invariant arithmetic");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw DomainError("integer overflow in invariant arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow in invariant arithmetic");
  return r;
}

}  // namespace fourfold
