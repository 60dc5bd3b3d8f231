#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace fourfold {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// H^2(M; Z)/torsion with its intersection form and a finite list of
/// candidate monopole classes.
class QuadraticFormSpace {
 public:
  /// Validates symmetry and unimodularity; throws DegenerateForm for a
  /// singular Gram matrix and DomainError for other violations.
  QuadraticFormSpace(IntMatrix gram, std::vector<IntVector> classes);

  /// Whitespace-separated integers, one matrix row (or one class) per line.
  /// Blank lines and lines starting with '#' are ignored.
  static QuadraticFormSpace from_text(std::string_view gram_text, std::string_view classes_text);

  int dimension() const { return static_cast<int>(gram_.rows()); }
  int b_plus() const { return b_plus_; }
  int b_minus() const { return b_minus_; }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<IntVector>& classes() const { return classes_; }

  std::int64_t pairing(const IntVector& a, const IntVector& b) const;
  /// Exact determinant of the Gram matrix.
  std::int64_t determinant() const;

  QuadraticFormSpace with_classes(std::vector<IntVector> classes) const;

 private:
  IntMatrix gram_;
  std::vector<IntVector> classes_;
  int b_plus_ = 0;
  int b_minus_ = 0;
};

/// Parses whitespace-separated integer rows (shared by the CLI file formats).
std::vector<std::vector<std::int64_t>> parse_integer_rows(std::string_view text);

/// Exact integer determinant (Bareiss elimination on multiprecision integers).
std::int64_t exact_determinant(const IntMatrix& m);

}  // namespace fourfold
