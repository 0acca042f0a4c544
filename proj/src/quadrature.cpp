#include "circlens/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace circlens {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        // one more evaluation of the derivative at the converged node
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

QuadratureRule composite_rule(std::span<const double> breakpoints, int order) {
  if (breakpoints.size() < 2) throw std::invalid_argument("composite_rule: need two breakpoints");
  const GaussLegendreRule& gl = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve((breakpoints.size() - 1) * order);
  rule.weights.reserve((breakpoints.size() - 1) * order);
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double a = breakpoints[p], b = breakpoints[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + half * gl.nodes[i]);
      rule.weights.push_back(half * gl.weights[i]);
    }
  }
  return rule;
}

QuadratureRule composite_rule(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_rule: panels must be positive");
  std::vector<double> cuts(panels + 1);
  for (int i = 0; i <= panels; ++i) cuts[i] = a + (b - a) * i / panels;
  cuts.back() = b;
  return composite_rule(cuts, order);
}

std::vector<double> merge_cuts(std::vector<double> a, std::span<const double> b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<double> uniform_cuts(double a, double b, double step, std::size_t max_cuts) {
  if (!(b >= a)) throw std::invalid_argument("uniform_cuts: b < a");
  if (!(step > 0.0)) throw std::invalid_argument("uniform_cuts: step must be positive");
  const double count = std::ceil((b - a) / step);
  if (count > static_cast<double>(max_cuts))
    throw NumericalError("uniform_cuts: " + std::to_string(count) + " panels exceed the limit");
  std::vector<double> cuts;
  const std::size_t n = static_cast<std::size_t>(count);
  cuts.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) cuts.push_back(a + step * static_cast<double>(i));
  cuts.push_back(b);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace circlens
