#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fourfold/common.hpp"
#include "fourfold/numeric_alpha.hpp"

namespace fourfold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Chart H = P + N L over unnormalized eigenvectors of Q.
struct OracleChart {
  Eigen::MatrixXd q;
  Eigen::MatrixXd pos;
  Eigen::MatrixXd neg;
  Eigen::VectorXd lambda_pos;
  Eigen::VectorXd lambda_neg;  // absolute values
  std::vector<Eigen::VectorXd> classes;
};

struct Probe {
  bool feasible = false;
  double value = kInf;
  Eigen::Index arg = 0;
  double min_eig = 0.0;
};

Probe probe(const OracleChart& c, const Eigen::MatrixXd& l) {
  Probe p;
  const Eigen::MatrixXd h = c.pos + c.neg * l;
  const Eigen::MatrixXd g = h.transpose() * c.q * h;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  p.min_eig = eig.eigenvalues().minCoeff();
  if (p.min_eig <= 1e-10 * c.lambda_pos.maxCoeff()) return p;
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  p.feasible = true;
  p.value = -kInf;
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const Eigen::VectorXd v = h.transpose() * (c.q * c.classes[i]);
    const double val = v.dot(llt.solve(v));
    if (val > p.value) {
      p.value = val;
      p.arg = static_cast<Eigen::Index>(i);
    }
  }
  return p;
}

double single_class(const OracleChart& c, const Eigen::MatrixXd& l, std::size_t i) {
  const Eigen::MatrixXd h = c.pos + c.neg * l;
  const Eigen::MatrixXd g = h.transpose() * c.q * h;
  const Eigen::VectorXd v = h.transpose() * (c.q * c.classes[i]);
  return v.dot(g.ldlt().solve(v));
}

}  // namespace

OracleResult alpha_brute_oracle(const QuadraticFormSpace& space, int grid_density) {
  if (space.dimension() > kOracleMaxDimension) {
    throw ScaleError("oracle limited to b2 <= " + std::to_string(kOracleMaxDimension));
  }
  if (space.b_plus() < 1) throw DomainError("oracle needs b+ >= 1");
  if (space.classes().empty()) throw DomainError("oracle needs at least one class");
  grid_density = std::max(grid_density, 3);

  OracleChart c;
  c.q = space.gram().cast<double>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.q);
  const int bp = space.b_plus();
  const int bm = space.b_minus();
  c.neg = eig.eigenvectors().leftCols(bm);
  c.pos = eig.eigenvectors().rightCols(bp);
  c.lambda_neg = -eig.eigenvalues().head(bm);
  c.lambda_pos = eig.eigenvalues().tail(bp);
  for (const auto& a : space.classes()) c.classes.push_back(a.cast<double>());

  OracleResult out;
  if (bm == 0) {
    out.value = -kInf;
    for (const auto& a : c.classes) out.value = std::max(out.value, a.dot(c.q * a));
    return out;
  }

  const auto d = static_cast<Eigen::Index>(bm) * bp;
  const double radius = std::sqrt(c.lambda_pos.maxCoeff() / c.lambda_neg.minCoeff()) * 1.000001;

  // Tensor grid, thinned so the point count stays bounded.
  int density = grid_density;
  while (density > 3 && std::pow(static_cast<double>(density), static_cast<double>(d)) > 2e6) --density;
  Eigen::MatrixXd best_l = Eigen::MatrixXd::Zero(bm, bp);
  Probe best = probe(c, best_l);
  std::vector<int> digits(static_cast<std::size_t>(d), 0);
  Eigen::MatrixXd l(bm, bp);
  while (true) {
    for (Eigen::Index i = 0; i < d; ++i) {
      l.data()[i] = -radius + 2.0 * radius * digits[static_cast<std::size_t>(i)] / (density - 1);
    }
    const Probe p = probe(c, l);
    if (p.feasible && p.value < best.value) {
      best = p;
      best_l = l;
    }
    Eigen::Index k = 0;
    while (k < d && ++digits[static_cast<std::size_t>(k)] == density) digits[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }

  // Central-cut ellipsoid method over the ball containing the box.
  auto feasibility_cut = [&](const Eigen::MatrixXd& at) {
    const Eigen::MatrixXd g = c.lambda_pos.asDiagonal().toDenseMatrix() -
                              at.transpose() * c.lambda_neg.asDiagonal() * at;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ge(g);
    const Eigen::VectorXd v = ge.eigenvectors().col(0);
    const Eigen::MatrixXd grad = 2.0 * c.lambda_neg.asDiagonal() * at * v * v.transpose();
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(grad.data(), d));
  };
  auto objective_cut = [&](const Eigen::MatrixXd& at, std::size_t cls) {
    Eigen::VectorXd grad(d);
    const double h = 1e-6 * (1.0 + at.norm());
    for (Eigen::Index i = 0; i < d; ++i) {
      double step = h;
      Eigen::MatrixXd up = at;
      Eigen::MatrixXd dn = at;
      while (true) {
        up.data()[i] = at.data()[i] + step;
        dn.data()[i] = at.data()[i] - step;
        if ((probe(c, up).feasible && probe(c, dn).feasible) || step < 1e-14) break;
        step *= 0.1;
      }
      grad(i) = (single_class(c, up, cls) - single_class(c, dn, cls)) / (2.0 * step);
    }
    return grad;
  };

  if (d == 1) {
    double lo = -radius;
    double hi = radius;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      Eigen::MatrixXd at(1, 1);
      at(0, 0) = mid;
      const Probe p = probe(c, at);
      double slope = 0;
      if (!p.feasible) {
        slope = mid;  // the feasible interval contains 0
      } else {
        if (p.value < best.value) {
          best = p;
          best_l = at;
        }
        slope = objective_cut(at, static_cast<std::size_t>(p.arg))(0);
      }
      if (slope > 0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  } else {
    const auto dd = static_cast<double>(d);
    Eigen::VectorXd center = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd shape = Eigen::MatrixXd::Identity(d, d) * (radius * radius * dd);
    const int iterations = 400 * static_cast<int>(d * d) + 2000;
    for (int it = 0; it < iterations; ++it) {
      const Eigen::MatrixXd at = Eigen::Map<const Eigen::MatrixXd>(center.data(), bm, bp);
      const Probe p = probe(c, at);
      Eigen::VectorXd g;
      if (!p.feasible) {
        g = feasibility_cut(at);
      } else {
        if (p.value < best.value) {
          best = p;
          best_l = at;
        }
        g = objective_cut(at, static_cast<std::size_t>(p.arg));
      }
      const double gag = g.dot(shape * g);
      if (!(gag > 1e-300)) break;
      const Eigen::VectorXd ag = shape * g / std::sqrt(gag);
      center -= ag / (dd + 1.0);
      shape = (dd * dd / (dd * dd - 1.0)) * (shape - (2.0 / (dd + 1.0)) * ag * ag.transpose());
      shape = 0.5 * (shape + shape.transpose());
      if (shape.trace() < 1e-26 * radius * radius) break;
    }
  }

  out.value = best.value;
  out.attained = best.min_eig > 1e-5 * c.lambda_pos.minCoeff();
  return out;
}

}  // namespace fourfold
