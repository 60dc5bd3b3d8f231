#include "fourfold/numeric_alpha.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "fourfold/common.hpp"

namespace fourfold {

std::pair<double, double> projection_split(const QuadraticFormSpace& space, const Eigen::MatrixXd& basis,
                                           const IntVector& a) {
  const Eigen::MatrixXd q = space.gram().cast<double>();
  const Eigen::VectorXd av = a.cast<double>();
  const Eigen::MatrixXd restricted = basis.transpose() * q * basis;
  const Eigen::VectorXd coeff = restricted.ldlt().solve(basis.transpose() * q * av);
  const Eigen::VectorXd plus = basis * coeff;
  const Eigen::VectorXd minus = av - plus;
  return {plus.dot(q * plus), minus.dot(q * minus)};
}

double inf_max_objective(const QuadraticFormSpace& space, const Eigen::MatrixXd& basis) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : space.classes()) best = std::max(best, projection_split(space, basis, a).first);
  return best;
}

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Classes in Q-orthonormal eigen-coordinates: a = P x + N y with Q = diag(I, -I).
struct Chart {
  Eigen::MatrixXd pos;  // n x b+
  Eigen::MatrixXd neg;  // n x b-
  Eigen::MatrixXd x;    // b+ x m
  Eigen::MatrixXd y;    // b- x m
};

Chart make_chart(const QuadraticFormSpace& space) {
  const Eigen::MatrixXd q = space.gram().cast<double>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q);
  const int bm = space.b_minus();
  const int bp = space.b_plus();
  const int n = space.dimension();
  Chart c;
  c.neg.resize(n, bm);
  c.pos.resize(n, bp);
  for (int j = 0; j < bm; ++j) c.neg.col(j) = eig.eigenvectors().col(j) / std::sqrt(-eig.eigenvalues()(j));
  for (int j = 0; j < bp; ++j) c.pos.col(j) = eig.eigenvectors().col(bm + j) / std::sqrt(eig.eigenvalues()(bm + j));
  const auto m = static_cast<Eigen::Index>(space.classes().size());
  Eigen::MatrixXd qa(n, m);
  for (Eigen::Index i = 0; i < m; ++i) qa.col(i) = q * space.classes()[i].cast<double>();
  c.x = c.pos.transpose() * qa;
  c.y = -(c.neg.transpose() * qa);
  return c;
}

// Per-class values f_i(L) = u^T (I - L^T L)^{-1} u, u = x_i - L^T y_i, and
// gradients 2 (L w - y_i) w^T with w = (I - L^T L)^{-1} u.
struct Evaluation {
  Eigen::VectorXd values;
  std::vector<Eigen::MatrixXd> grads;
  bool feasible = false;
};

Evaluation evaluate(const Chart& c, const Eigen::MatrixXd& l, bool with_grads) {
  Evaluation ev;
  const Eigen::Index bp = c.x.rows();
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(bp, bp) - l.transpose() * l;
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) return ev;
  const Eigen::VectorXd diag = Eigen::MatrixXd(llt.matrixL()).diagonal();
  if (diag.minCoeff() < 1e-9) return ev;
  const Eigen::MatrixXd u = c.x - l.transpose() * c.y;
  const Eigen::MatrixXd w = llt.solve(u);
  ev.values = (u.array() * w.array()).colwise().sum().transpose();
  if (with_grads) {
    ev.grads.reserve(static_cast<std::size_t>(u.cols()));
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
      ev.grads.push_back(2.0 * (l * w.col(i) - c.y.col(i)) * w.col(i).transpose());
    }
  }
  ev.feasible = true;
  return ev;
}

double hard_max(const Evaluation& ev) {
  return ev.feasible ? ev.values.maxCoeff() : kInfeasible;
}

// Log-sum-exp smoothing of the max at temperature t.
double smooth_max(const Evaluation& ev, double t, Eigen::MatrixXd* grad) {
  if (!ev.feasible) return kInfeasible;
  const double top = ev.values.maxCoeff();
  if (t <= 0 || ev.values.size() == 1) {
    if (grad) {
      Eigen::Index arg = 0;
      ev.values.maxCoeff(&arg);
      *grad = ev.grads[static_cast<std::size_t>(arg)];
    }
    return top;
  }
  const Eigen::VectorXd weights = ((ev.values.array() - top) / t).exp();
  const double total = weights.sum();
  if (grad) {
    grad->setZero(ev.grads.front().rows(), ev.grads.front().cols());
    for (Eigen::Index i = 0; i < weights.size(); ++i) *grad += (weights(i) / total) * ev.grads[static_cast<std::size_t>(i)];
  }
  return top + t * std::log(total);
}

Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

// Quasi-Newton minimization of the smoothed max at fixed temperature.
// Returns the number of iterations used.
int bfgs_stage(const Chart& c, Eigen::MatrixXd& l, double t, int budget, bool& exhausted) {
  const Eigen::Index rows = l.rows();
  const Eigen::Index cols = l.cols();
  const Eigen::Index d = l.size();
  Eigen::MatrixXd gm;
  double f = smooth_max(evaluate(c, l, true), t, &gm);
  Eigen::VectorXd x = vec(l);
  Eigen::VectorXd g = vec(gm);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(d, d);
  bool scaled = false;
  int it = 0;
  int flat_steps = 0;
  exhausted = false;
  for (; it < budget; ++it) {
    if (g.norm() < 1e-13 * (1.0 + std::abs(f))) break;
    Eigen::VectorXd p = -hinv * g;
    double slope = g.dot(p);
    if (!(slope < 0)) {
      hinv.setIdentity();
      p = -g;
      slope = g.dot(p);
    }
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd xn;
    double fn = f;
    Eigen::MatrixXd gmn;
    while (step > 1e-20) {
      xn = x + step * p;
      fn = smooth_max(evaluate(c, unvec(xn, rows, cols), true), t, &gmn);
      if (fn <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd gn = vec(gmn);
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd yv = gn - g;
    const double sy = s.dot(yv);
    if (sy > 1e-14 * s.norm() * yv.norm()) {
      if (!scaled) {
        hinv *= sy / yv.dot(yv);
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
      hinv = (eye - rho * s * yv.transpose()) * hinv * (eye - rho * yv * s.transpose()) + rho * s * s.transpose();
    }
    const double decrease = f - fn;
    x = xn;
    g = gn;
    f = fn;
    flat_steps = decrease <= 1e-15 * (1.0 + std::abs(f)) ? flat_steps + 1 : 0;
    if (flat_steps >= 5) break;
  }
  if (it >= budget) exhausted = true;
  l = unvec(x, rows, cols);
  return it;
}

// Minimum-norm point of the convex hull of the given matrices, returned as
// the combined matrix.
Eigen::MatrixXd min_norm_combination(const std::vector<Eigen::MatrixXd>& gs) {
  const auto k = static_cast<Eigen::Index>(gs.size());
  Eigen::MatrixXd gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) gram(i, j) = gram(j, i) = (gs[i].array() * gs[j].array()).sum();
  Eigen::VectorXd best_w;
  double best = kInfeasible;
  if (k <= 10) {
    // Exact: min over faces of the simplex via the affine-hull KKT system.
    for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index i = 0; i < k; ++i)
        if (mask & (1U << i)) idx.push_back(i);
      const auto s = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
      for (Eigen::Index a = 0; a < s; ++a) {
        for (Eigen::Index b = 0; b < s; ++b) kkt(a, b) = gram(idx[a], idx[b]);
        kkt(a, s) = kkt(s, a) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
      rhs(s) = 1.0;
      const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
      bool ok = std::abs(sol.head(s).sum() - 1.0) < 1e-9;
      for (Eigen::Index a = 0; a < s && ok; ++a) {
        if (sol(a) < -1e-12) ok = false;
        w(idx[a]) = std::max(0.0, sol(a));
      }
      if (!ok) continue;
      w /= w.sum();
      const double val = w.dot(gram * w);
      if (val < best) {
        best = val;
        best_w = w;
      }
    }
  } else {
    // Projected gradient on the simplex.
    best_w = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
    const double lip = std::max(1e-300, gram.diagonal().sum());
    for (int it = 0; it < 5000; ++it) {
      Eigen::VectorXd v = best_w - (2.0 / lip) * (gram * best_w);
      std::vector<double> sorted(v.data(), v.data() + k);
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      double cum = 0;
      double theta = 0;
      for (Eigen::Index i = 0; i < k; ++i) {
        cum += sorted[static_cast<std::size_t>(i)];
        const double cand = (cum - 1.0) / static_cast<double>(i + 1);
        if (sorted[static_cast<std::size_t>(i)] - cand > 0) theta = cand;
      }
      best_w = (v.array() - theta).max(0.0);
    }
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(gs.front().rows(), gs.front().cols());
  for (Eigen::Index i = 0; i < k; ++i) out += best_w(i) * gs[static_cast<std::size_t>(i)];
  return out;
}

// Steepest descent with the minimum-norm element of the epsilon-active
// subdifferential of the hard max.
int subgradient_polish(const Chart& c, Eigen::MatrixXd& l, int budget) {
  int it = 0;
  double eps_rel = 1e-3;
  while (it < budget && eps_rel > 1e-15) {
    const Evaluation ev = evaluate(c, l, true);
    const double top = hard_max(ev);
    const double eps = eps_rel * (1.0 + std::abs(top));
    std::vector<Eigen::MatrixXd> active;
    for (Eigen::Index i = 0; i < ev.values.size(); ++i) {
      if (ev.values(i) >= top - eps) active.push_back(ev.grads[static_cast<std::size_t>(i)]);
    }
    const Eigen::MatrixXd dir = -min_norm_combination(active);
    const double dn2 = dir.squaredNorm();
    if (dn2 < 1e-30) {
      eps_rel *= 1e-2;
      ++it;
      continue;
    }
    double step = 1.0;
    bool improved = false;
    while (step > 1e-16) {
      const Eigen::MatrixXd cand = l + step * dir;
      const double fc = hard_max(evaluate(c, cand, false));
      if (fc < top - 1e-4 * step * dn2) {
        l = cand;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) eps_rel *= 1e-2;
    ++it;
  }
  return it;
}

struct StartResult {
  double value = kInfeasible;
  Eigen::MatrixXd chart;
  int iterations = 0;
  bool exhausted = false;
};

StartResult run_start(const Chart& c, Eigen::MatrixXd l, const NumericOptions& opts) {
  StartResult out;
  const double initial = hard_max(evaluate(c, l, false));
  const double scale = std::max(1.0, std::abs(initial));
  const double log_m = std::log(static_cast<double>(std::max<Eigen::Index>(c.x.cols(), 1)));
  const double t_final = log_m > 0 ? std::min(1e-2 * opts.tolerance / log_m, 1e-9 * scale) : 0.0;
  std::vector<double> temps;
  if (log_m > 0) {
    for (double t = 0.1 * scale; t > t_final; t *= 0.1) temps.push_back(t);
    temps.push_back(t_final);
  } else {
    temps.push_back(0.0);
  }
  const int stage_budget = std::max(50, opts.max_iter / static_cast<int>(temps.size() + 1));
  for (double t : temps) {
    bool exhausted = false;
    out.iterations += bfgs_stage(c, l, t, stage_budget, exhausted);
    out.exhausted = exhausted;
  }
  out.iterations += subgradient_polish(c, l, std::max(50, opts.max_iter / 10));
  out.value = hard_max(evaluate(c, l, false));
  out.chart = l;
  return out;
}

}  // namespace

ChartEvaluation chart_objective(const QuadraticFormSpace& space, const Eigen::MatrixXd& l) {
  const Chart c = make_chart(space);
  if (l.rows() != space.b_minus() || l.cols() != space.b_plus()) throw DomainError("chart point has the wrong shape");
  Evaluation ev = evaluate(c, l, true);
  ChartEvaluation out;
  if (!ev.feasible) return out;
  out.values = std::move(ev.values);
  out.gradients = std::move(ev.grads);
  return out;
}

Eigen::MatrixXd chart_basis(const QuadraticFormSpace& space, const Eigen::MatrixXd& l) {
  const Chart c = make_chart(space);
  return c.pos + c.neg * l;
}

NumericAlphaResult alpha_squared_numeric(const QuadraticFormSpace& space, const NumericOptions& opts) {
  if (space.b_plus() < 1) throw DomainError("numeric alpha needs b+ >= 1");
  if (space.classes().empty()) throw DomainError("numeric alpha needs at least one class");
  const Chart chart = make_chart(space);
  const int bp = space.b_plus();
  const int bm = space.b_minus();

  NumericAlphaResult result;
  if (bm == 0) {
    // The only positive plane is the whole space: (a+)^2 = Q(a, a).
    result.value = chart.x.colwise().squaredNorm().maxCoeff();
    result.witness.basis = chart.pos;
    result.witness.chart = Eigen::MatrixXd::Zero(0, bp);
    return result;
  }

  const int starts = std::max(1, opts.starts);
  std::vector<Eigen::MatrixXd> initial(static_cast<std::size_t>(starts));
  initial[0] = Eigen::MatrixXd::Zero(bm, bp);
  for (int s = 1; s < starts; ++s) {
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(static_cast<std::uint64_t>(s))));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> radius(0.05, 0.8);
    Eigen::MatrixXd g(bm, bp);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
    const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(g).singularValues()(0);
    initial[static_cast<std::size_t>(s)] = g * (radius(rng) / std::max(norm, 1e-12));
  }

  std::vector<StartResult> results(static_cast<std::size_t>(starts));
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const int workers = std::min(starts, opts.threads > 0 ? opts.threads : static_cast<int>(hw));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int s = next++; s < starts; s = next++) {
      results[static_cast<std::size_t>(s)] = run_start(chart, initial[static_cast<std::size_t>(s)], opts);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].value < results[best].value) best = s;
  }
  const StartResult& top = results[best];
  const double agree = 10.0 * opts.tolerance * std::max(1.0, std::abs(top.value));
  int agreeing = 0;
  for (const auto& r : results) agreeing += r.value <= top.value + agree ? 1 : 0;

  result.value = top.value;
  result.iterations = top.iterations;
  result.witness.chart = top.chart;
  result.witness.basis = chart.pos + chart.neg * top.chart;
  result.converged = !top.exhausted && (starts == 1 || agreeing >= 2);
  const double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(top.chart).singularValues()(0);
  result.near_boundary = sigma > 1.0 - 1e-4;
  return result;
}

}  // namespace fourfold
