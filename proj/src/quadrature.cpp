#include "toa/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace toa {

namespace {

// Newton iteration on Legendre P_n; nodes seeded by the Chebyshev estimate.
GaussLegendre compute_rule(int order) {
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[half - 1] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::rule(int order) {
  if (order < 2) fail("ValidationError", "Gauss-Legendre order must be >= 2");
  if (order > 256) fail("QuadratureBudgetExceeded", "Gauss-Legendre order capped at 256");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

Complex integrate_lower_triangle(double l, const GaussLegendre& rule,
                                 const std::function<Complex(double, double)>& f) {
  const Eigen::Index n = rule.nodes.size();
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = 0.5 * (rule.nodes[i] + 1.0);
    const double wu = 0.5 * rule.weights[i];
    const double q = -l + 2.0 * l * u;
    const double jac = 2.0 * l * (q + l);
    Complex inner(0.0, 0.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = 0.5 * (rule.nodes[j] + 1.0);
      const double wv = 0.5 * rule.weights[j];
      const double q_prime = -l + (q + l) * v;
      inner += wv * f(q, q_prime);
    }
    acc += wu * jac * inner;
  }
  return acc;
}

Complex integrate_square_split(double l, const GaussLegendre& rule,
                               const std::function<Complex(double, double)>& f) {
  const Complex lower = integrate_lower_triangle(l, rule, f);
  const Complex upper =
      integrate_lower_triangle(l, rule, [&f](double q, double q_prime) { return f(q_prime, q); });
  return lower + upper;
}

void parallel_for_index(Eigen::Index count, unsigned workers,
                        const std::function<void(Eigen::Index)>& body) {
  if (workers <= 1 || count < 2) {
    for (Eigen::Index i = 0; i < count; ++i) body(i);
    return;
  }
  const unsigned n_threads = std::min<unsigned>(workers, static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t]() {
      for (Eigen::Index i = t; i < count; i += n_threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double fit_loglog_slope(const RealVector& x, const RealVector& y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail("ValidationError", "log-log fit needs at least two samples");
  }
  const Eigen::Index n = x.size();
  RealVector lx(n), ly(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail("ValidationError", "log-log fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = lx.mean();
  const double my = ly.mean();
  const double sxx = (lx.array() - mx).square().sum();
  const double sxy = ((lx.array() - mx) * (ly.array() - my)).sum();
  return sxy / sxx;
}

}  // namespace toa
