#include "cvar/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvar/geometry.hpp"

namespace cvar {

namespace {

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxLatents, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxLatents, kMaxLatents>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxOutcomes, 1>;
using Jac = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxOutcomes, kMaxLatents>;

constexpr double kLo = 1e-9;
constexpr double kHi = 1 - 1e-9;

struct Problem {
  const OutcomeModel& m;
  RVec target;

  RVec residual(const Vec& q) const {
    RVec p = RVec::Zero(m.k);
    for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
      double w = 1;
      for (unsigned i = 0; i < m.n; ++i) w *= ((j >> i) & 1) ? 1 - q[i] : q[i];
      p[m.outcome[j]] += w;
    }
    return p - target;
  }

  void jacobian(const Vec& q, Jac& J) const {
    J.setZero(m.k, m.n);
    double f[kMaxLatents], pre[kMaxLatents + 1], suf[kMaxLatents + 1];
    for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
      for (unsigned i = 0; i < m.n; ++i) f[i] = ((j >> i) & 1) ? 1 - q[i] : q[i];
      pre[0] = 1;
      for (unsigned i = 0; i < m.n; ++i) pre[i + 1] = pre[i] * f[i];
      suf[m.n] = 1;
      for (unsigned i = m.n; i-- > 0;) suf[i] = suf[i + 1] * f[i];
      unsigned o = m.outcome[j];
      for (unsigned i = 0; i < m.n; ++i)
        J(o, i) += (((j >> i) & 1) ? -1.0 : 1.0) * pre[i] * suf[i + 1];
    }
  }
};

double max_abs(const RVec& r) { return r.cwiseAbs().maxCoeff(); }

Vec clamp(Vec q) {
  for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = std::clamp(q[i], kLo, kHi);
  return q;
}

// Box-projected Levenberg-Marquardt from q0.
FitResult levenberg_marquardt(const Problem& pr, Vec q, const FitOptions& opt) {
  const unsigned n = pr.m.n;
  RVec r = pr.residual(q);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  Jac J;
  for (unsigned it = 0; it < opt.max_iterations && max_abs(r) > opt.tol * 1e-2; ++it) {
    pr.jacobian(q, J);
    Mat A = J.transpose() * J;
    Vec g = J.transpose() * r;
    bool improved = false;
    while (lambda < 1e14) {
      Mat M = A;
      for (unsigned i = 0; i < n; ++i) M(i, i) += lambda * (A(i, i) + 1e-9);
      Vec step = M.ldlt().solve(-g);
      Vec qn = clamp(q + step);
      RVec rn = pr.residual(qn);
      double cn = rn.squaredNorm();
      if (cn < cost) {
        double moved = (qn - q).cwiseAbs().maxCoeff();
        q = qn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = moved > 1e-15;
        break;
      }
      lambda *= 5;
    }
    if (!improved) break;
  }
  FitResult res;
  res.q.assign(q.data(), q.data() + n);
  res.residual = max_abs(r);
  res.success = res.residual <= opt.tol;
  return res;
}

double uniform01(std::uint64_t& s) {
  s = splitmix64(s);
  return (static_cast<double>(s >> 11) + 0.5) * 0x1.0p-53;
}

unsigned default_grid(unsigned n) {
  if (n <= 4) return 21;
  if (n == 5) return 9;
  return 5;
}

}  // namespace

OutcomeModel outcome_model(const CausalModel& m) {
  OutcomeModel om{m.n, 4, std::vector<unsigned>(std::size_t(1) << m.n)};
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) om.outcome[j] = m.outcome(j);
  return om;
}

FitResult fit_distribution(const CausalModel& m, const JointDistD& target, const FitOptions& opt) {
  return fit_outcomes(outcome_model(m), target, opt);
}

FitResult fit_outcomes(const OutcomeModel& m, std::span<const double> target, const FitOptions& opt) {
  if (m.n > kMaxLatents || m.k == 0 || m.k > kMaxOutcomes || target.size() != m.k ||
      m.outcome.size() != (std::size_t(1) << m.n))
    throw std::invalid_argument("outcome model and target do not match");
  double sum = 0;
  for (double x : target) {
    if (!(x >= 0) || x > 1) throw std::invalid_argument("target is not a distribution");
    sum += x;
  }
  if (std::abs(sum - 1) > 1e-9) throw std::invalid_argument("target does not sum to 1");

  Problem pr{m, Eigen::Map<const Eigen::VectorXd>(target.data(), Eigen::Index(target.size()))};
  const unsigned n = m.n;
  if (n == 0) {
    FitResult res;
    res.residual = max_abs(pr.residual(Vec(0)));
    res.success = res.residual <= opt.tol;
    return res;
  }

  FitResult best;
  best.residual = INFINITY;
  auto consider = [&](FitResult r) {
    if (r.residual < best.residual) best = std::move(r);
    return best.success;
  };

  for (unsigned s = 0; s < opt.starts; ++s) {
    std::uint64_t st = splitmix64(opt.seed * 0x9E3779B97F4A7C15ull + s);
    Vec q(n);
    for (unsigned i = 0; i < n; ++i) q[i] = uniform01(st);
    if (consider(levenberg_marquardt(pr, clamp(q), opt))) return best;
  }

  // Grid fallback: refine the best-scoring grid points.
  const unsigned G = opt.grid_per_axis ? opt.grid_per_axis : default_grid(n);
  std::vector<std::pair<double, std::uint64_t>> scored;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= G;
  scored.reserve(total);
  Vec q(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (unsigned i = 0; i < n; ++i) {
      q[i] = double(x % G + 1) / double(G + 1);
      x /= G;
    }
    scored.emplace_back(max_abs(pr.residual(q)), idx);
  }
  unsigned keep = std::min<std::uint64_t>(opt.grid_seeds, total);
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end());
  for (unsigned k = 0; k < keep; ++k) {
    std::uint64_t x = scored[k].second;
    for (unsigned i = 0; i < n; ++i) {
      q[i] = double(x % G + 1) / double(G + 1);
      x /= G;
    }
    if (consider(levenberg_marquardt(pr, q, opt))) return best;
  }
  return best;
}

std::vector<FitResult> fit_batch(const CausalModel& m, const std::vector<JointDistD>& targets,
                                 const FitOptions& opt, Execution exec) {
  std::vector<FitResult> out(targets.size());
  const auto n = static_cast<std::int64_t>(targets.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) out[i] = fit_distribution(m, targets[i], opt);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = fit_distribution(m, targets[i], opt);
  }
  return out;
}

}  // namespace cvar
