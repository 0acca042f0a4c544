#ifndef CIRCLENS_QUADRATURE_HPP
#define CIRCLENS_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "circlens/errors.hpp"

namespace circlens {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule, computed by Newton iteration on the three-term
/// recurrence. Thread safe.
const GaussLegendreRule& gauss_legendre(int n);

/// A fixed set of nodes and weights on the real line.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto apply(F&& f) const {
    using T = std::decay_t<decltype(f(0.0))>;
    T sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Composite Gauss-Legendre rule with `order` nodes on each panel between
/// consecutive breakpoints.
QuadratureRule composite_rule(std::span<const double> breakpoints, int order);
QuadratureRule composite_rule(double a, double b, int panels, int order);

struct IntegrationOptions {
  double rel_tol = 1e-12;  // relative to the integral of |f|
  double abs_tol = 1e-300;
  int order = 20;
  int max_panels = 40000;
};

template <class T>
struct IntegrationResult {
  T value{};
  double error = 0.0;  // estimated absolute error
  double l1 = 0.0;     // estimate of the integral of |f|
  int panels = 0;
};

namespace detail {

template <class T>
struct Panel {
  double a, b;
  T coarse, left, right;
  double l1;
  double err() const { return std::abs((left + right) - coarse); }
};

template <class F, class T>
T gl_panel(F& f, double a, double b, const GaussLegendreRule& rule, double& l1) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  T sum{};
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const T v = f(mid + half * rule.nodes[i]);
    sum += rule.weights[i] * v;
    abs_sum += rule.weights[i] * std::abs(v);
  }
  l1 = abs_sum * std::abs(half);
  return sum * half;
}

template <class F, class T>
Panel<T> make_panel(F& f, double a, double b, const GaussLegendreRule& rule, T coarse) {
  const double m = 0.5 * (a + b);
  double l1_left = 0.0, l1_right = 0.0;
  const T left = gl_panel<F, T>(f, a, m, rule, l1_left);
  const T right = gl_panel<F, T>(f, m, b, rule, l1_right);
  return Panel<T>{a, b, coarse, left, right, l1_left + l1_right};
}

template <class F, class T>
std::vector<Panel<T>> refine(F& f, std::span<const double> breakpoints,
                             const IntegrationOptions& opt, IntegrationResult<T>& out) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
  const GaussLegendreRule& rule = gauss_legendre(opt.order);

  auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.err() < y.err(); };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> queue(cmp);

  T total{};
  double total_err = 0.0, total_l1 = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b >= a)) throw std::invalid_argument("integrate: breakpoints must be nondecreasing");
    if (b == a) continue;
    double l1 = 0.0;
    const T coarse = gl_panel<F, T>(f, a, b, rule, l1);
    Panel<T> p = make_panel<F, T>(f, a, b, rule, coarse);
    queue.push(p);
  }

  auto tally = [&] {
    // recompute sums from scratch so that rounding does not accumulate
    total = T{};
    total_err = 0.0;
    total_l1 = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      const Panel<T>& p = copy.top();
      total += p.left + p.right;
      total_err += p.err();
      total_l1 += p.l1;
      copy.pop();
    }
  };

  // running sums, refreshed periodically
  tally();
  int since_tally = 0;
  while (!queue.empty() && total_err > std::max(opt.abs_tol, opt.rel_tol * total_l1)) {
    if (static_cast<int>(queue.size()) >= opt.max_panels) {
      tally();
      if (total_err <= std::max(opt.abs_tol, opt.rel_tol * total_l1)) break;
      throw NumericalError("integrate: no convergence within " + std::to_string(opt.max_panels) +
                           " panels (estimated error " + std::to_string(total_err) + ")");
    }
    Panel<T> worst = queue.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) break;  // panel at roundoff width
    queue.pop();
    total -= worst.left + worst.right;
    total_err -= worst.err();
    total_l1 -= worst.l1;
    Panel<T> lp = make_panel<F, T>(f, worst.a, m, rule, worst.left);
    Panel<T> rp = make_panel<F, T>(f, m, worst.b, rule, worst.right);
    total += lp.left + lp.right + rp.left + rp.right;
    total_err += lp.err() + rp.err();
    total_l1 += lp.l1 + rp.l1;
    queue.push(lp);
    queue.push(rp);
    if (++since_tally == 256) {
      tally();
      since_tally = 0;
    }
  }
  tally();

  std::vector<Panel<T>> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  out.value = total;
  out.error = total_err;
  out.l1 = total_l1;
  out.panels = static_cast<int>(panels.size());
  return panels;
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration over consecutive breakpoints.
/// Each panel is compared with its two halves; the worst panel is bisected
/// until the summed discrepancy is below rel_tol times the integral of |f|.
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, const IntegrationOptions& opt = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  IntegrationResult<T> out;
  detail::refine<F, T>(f, breakpoints, opt, out);
  return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const IntegrationOptions& opt = {}) {
  const double bp[2] = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(bp, 2), opt);
}

/// Runs the adaptive refinement on f and returns the converged panel edges
/// (each panel split at its midpoint, matching the accepted estimate).
template <class F>
std::vector<double> adaptive_cuts(F&& f, std::span<const double> breakpoints,
                                  const IntegrationOptions& opt = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  IntegrationResult<T> out;
  auto panels = detail::refine<F, T>(f, breakpoints, opt, out);
  std::vector<double> cuts;
  cuts.reserve(2 * panels.size() + 1);
  for (const auto& p : panels) {
    cuts.push_back(p.a);
    cuts.push_back(0.5 * (p.a + p.b));
    cuts.push_back(p.b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

/// The converged layout of adaptive_cuts as a reusable fixed rule. Used where
/// a family of nearby integrands must share one discretization, e.g. inside
/// finite differences.
template <class F>
QuadratureRule adaptive_rule(F&& f, std::span<const double> breakpoints,
                             const IntegrationOptions& opt = {}) {
  return composite_rule(adaptive_cuts(std::forward<F>(f), breakpoints, opt), opt.order);
}

/// Sorted union of breakpoints, dropping duplicates.
std::vector<double> merge_cuts(std::vector<double> a, std::span<const double> b);

/// a, a + step, ..., b (b always included). Throws if more than max_cuts.
std::vector<double> uniform_cuts(double a, double b, double step, std::size_t max_cuts = 200000);

}  // namespace circlens

#endif  // CIRCLENS_QUADRATURE_HPP
