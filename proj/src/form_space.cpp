#include "fourfold/form_space.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fourfold/common.hpp"

namespace fourfold {

std::int64_t exact_determinant(const IntMatrix& m) {
  using boost::multiprecision::cpp_int;
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i][j] = m(i, j);
  cpp_int prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        if (a[i][k] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  cpp_int det = a[n - 1][n - 1] * sign;
  if (det > std::numeric_limits<std::int64_t>::max() || det < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("determinant out of 64-bit range");
  }
  return static_cast<std::int64_t>(det);
}

std::vector<std::vector<std::int64_t>> parse_integer_rows(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::int64_t> row;
    bool comment = false;
    while (fields >> field) {
      if (row.empty() && field.front() == '#') {
        comment = true;
        break;
      }
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw DomainError("line " + std::to_string(line_no) + ": '" + field + "' is not an integer");
      }
      row.push_back(v);
    }
    if (!comment && !row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

QuadraticFormSpace::QuadraticFormSpace(IntMatrix gram, std::vector<IntVector> classes)
    : gram_(std::move(gram)), classes_(std::move(classes)) {
  if (gram_.rows() != gram_.cols()) throw DomainError("Gram matrix must be square");
  if (gram_.rows() == 0) throw DomainError("Gram matrix must be non-empty");
  if (gram_ != gram_.transpose()) throw DomainError("Gram matrix must be symmetric");
  const std::int64_t det = exact_determinant(gram_);
  if (det == 0) throw DegenerateForm("Gram matrix is singular");
  if (det != 1 && det != -1) {
    throw DomainError("intersection form must be unimodular, determinant is " + std::to_string(det));
  }
  for (const auto& c : classes_) {
    if (c.size() != gram_.rows()) throw DomainError("class dimension does not match the form");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_.cast<double>());
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) > 0) {
      ++b_plus_;
    } else {
      ++b_minus_;
    }
  }
}

QuadraticFormSpace QuadraticFormSpace::from_text(std::string_view gram_text, std::string_view classes_text) {
  const auto rows = parse_integer_rows(gram_text);
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw DomainError("Gram row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = rows[i][j];
  }
  std::vector<IntVector> classes;
  for (const auto& row : parse_integer_rows(classes_text)) {
    IntVector v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t j = 0; j < row.size(); ++j) v(static_cast<Eigen::Index>(j)) = row[j];
    classes.push_back(std::move(v));
  }
  return QuadraticFormSpace(std::move(gram), std::move(classes));
}

std::int64_t QuadraticFormSpace::pairing(const IntVector& a, const IntVector& b) const {
  return a.dot(gram_ * b);
}

std::int64_t QuadraticFormSpace::determinant() const {
  return exact_determinant(gram_);
}

QuadraticFormSpace QuadraticFormSpace::with_classes(std::vector<IntVector> classes) const {
  return QuadraticFormSpace(gram_, std::move(classes));
}

}  // namespace fourfold
