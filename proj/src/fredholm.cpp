#include "circlens/fredholm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "circlens/errors.hpp"
#include "circlens/quadrature.hpp"

namespace circlens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDetGate = 1e-10;
constexpr double kEigenSlack = 1e-8;
constexpr int kMaxDoublings = 4;
constexpr double kMaxWork = 1e11;  // n^2 Q

void validate(const FredholmProblem& p) {
  if (!(p.b > p.a)) throw std::invalid_argument("fredholm: interval must have b > a");
  if (!(p.xi >= 0.0 && p.xi <= 1.0)) throw std::invalid_argument("fredholm: xi must lie in [0, 1]");
  if (p.n < 8) throw std::invalid_argument("fredholm: at least 8 nodes");
  if (!p.kernel && !p.translation_invariant) throw std::invalid_argument("fredholm: no kernel");
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& A) {
  const double imag = A.imag().cwiseAbs().maxCoeff();
  Eigen::VectorXd ev;
  if (imag == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.real(), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool in_range(const std::vector<double>& ev) {
  for (double l : ev)
    if (!(l > -kEigenSlack && l < 1.0 + kEigenSlack)) return false;
  return true;
}

void check_range(const std::vector<double>& ev) {
  for (double l : ev)
    if (!(l > -kEigenSlack && l < 1.0 + kEigenSlack))
      throw NumericalError("nystrom: eigenvalue " + std::to_string(l) + " outside (0, 1)");
}

std::vector<double> assemble_and_solve(const FredholmProblem& p, int n, const QuadratureRule* rule) {
  const GaussLegendreRule& gl = gauss_legendre(n);
  const double half = 0.5 * (p.b - p.a), mid = 0.5 * (p.a + p.b);
  std::vector<double> x(n), sw(n);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + half * gl.nodes[i];
    sw[i] = std::sqrt(half * gl.weights[i]);
  }
  Eigen::MatrixXcd A(n, n);
  if (rule != nullptr) {
    // K(x, y) = sum_q W_q e^{2 pi i (x - y) s_q}, so A = B B^* with
    // B_iq = sqrt(w_i W_q) e^{2 pi i x_i s_q}
    const std::size_t Q = rule->size();
    if (static_cast<double>(n) * n * static_cast<double>(Q) > kMaxWork)
      throw NumericalError("nystrom: interval too long for the spectral rule (" + std::to_string(Q) + " nodes)");
    A.setZero();
    constexpr std::size_t chunk = 2048;
    Eigen::MatrixXcd B(n, static_cast<Eigen::Index>(std::min(chunk, Q)));
    for (std::size_t q0 = 0; q0 < Q; q0 += chunk) {
      const int cols = static_cast<int>(std::min(chunk, Q - q0));
      for (int c = 0; c < cols; ++c) {
        const double sq = std::sqrt(std::max(rule->weights[q0 + c], 0.0));
        const double s = rule->nodes[q0 + c];
        for (int i = 0; i < n; ++i) B(i, c) = sw[i] * sq * std::polar(1.0, 2.0 * kPi * x[i] * s);
      }
      A.noalias() += B.leftCols(cols) * B.leftCols(cols).adjoint();
    }
    if (p.translation_invariant->even) A = A.real().cast<std::complex<double>>();
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const std::complex<double> v = sw[i] * p.kernel(x[i], x[j]) * sw[j];
        A(i, j) = v;
        A(j, i) = std::conj(v);
      }
    for (int i = 0; i < n; ++i) A(i, i) = A(i, i).real();
  }
  return hermitian_eigenvalues(A);
}

}  // namespace

FredholmProblem FredholmProblem::of(const CorrelationKernel& k, double a, double b, double xi, int n) {
  FredholmProblem p;
  p.kernel = [k](double x, double y) { return k(x, y); };
  p.translation_invariant = k;
  p.a = a;
  p.b = b;
  p.xi = xi;
  p.n = n;
  return p;
}

FredholmProblem FredholmProblem::of(KernelFn k, double a, double b, double xi, int n) {
  FredholmProblem p;
  p.kernel = std::move(k);
  p.a = a;
  p.b = b;
  p.xi = xi;
  p.n = n;
  return p;
}

double det_from_eigenvalues(std::span<const double> eigenvalues, double xi) {
  double log_det = 0.0;
  for (double l : eigenvalues) log_det += std::log1p(-xi * std::clamp(l, 0.0, 1.0));
  return std::exp(log_det);
}

std::vector<double> nystrom_eigenvalues_fixed(const FredholmProblem& problem, int n) {
  validate(problem);
  if (problem.translation_invariant) {
    const QuadratureRule rule = problem.translation_invariant->spectral_rule(problem.b - problem.a);
    auto ev = assemble_and_solve(problem, n, &rule);
    check_range(ev);
    return ev;
  }
  auto ev = assemble_and_solve(problem, n, nullptr);
  check_range(ev);
  return ev;
}

NystromResult nystrom_eigenvalues(const FredholmProblem& problem) {
  validate(problem);
  std::optional<QuadratureRule> rule;
  if (problem.translation_invariant) rule = problem.translation_invariant->spectral_rule(problem.b - problem.a);
  const QuadratureRule* rp = rule ? &*rule : nullptr;

  // an eigenvalue outside [0, 1] at a coarse level means the rule is under-resolved
  int n = problem.n;
  auto ev = assemble_and_solve(problem, n, rp);
  bool ok = in_range(ev);
  double det = det_from_eigenvalues(ev, problem.xi);
  for (int k = 0; k < kMaxDoublings; ++k) {
    n *= 2;
    auto finer = assemble_and_solve(problem, n, rp);
    const bool ok2 = in_range(finer);
    const double det2 = det_from_eigenvalues(finer, problem.xi);
    const double change = std::abs(det2 - det);
    if (ok && ok2 && change < kDetGate) return NystromResult{std::move(finer), n, change};
    ev = std::move(finer);
    ok = ok2;
    det = det2;
  }
  check_range(ev);
  throw NumericalError("nystrom: determinant not stable after " + std::to_string(kMaxDoublings) + " doublings");
}

double fredholm_det(const FredholmProblem& problem) {
  if (problem.xi == 0.0) {
    validate(problem);
    return 1.0;
  }
  return det_from_eigenvalues(nystrom_eigenvalues(problem).eigenvalues, problem.xi);
}

double gap_probability(FredholmProblem problem) {
  problem.xi = 1.0;
  return fredholm_det(problem);
}

CountingDistribution counting_from_eigenvalues(std::span<const double> eigenvalues, int n_max) {
  if (n_max < 0) throw std::invalid_argument("counting_distribution: n_max must be nonnegative");
  if (n_max > static_cast<int>(eigenvalues.size()))
    throw std::invalid_argument("counting_distribution: n_max exceeds the node count");
  // full polynomial, truncated only at the end
  std::vector<double> poly{1.0};
  double mean = 0.0;
  for (double l0 : eigenvalues) {
    const double l = std::clamp(l0, 0.0, 1.0);
    mean += l;
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += (1.0 - l) * poly[i];
      next[i + 1] += l * poly[i];
    }
    poly.swap(next);
  }
  CountingDistribution out;
  out.E.assign(poly.begin(), poly.begin() + n_max + 1);
  double sum = 0.0;
  for (double e : out.E) sum += e;
  out.tail = 1.0 - sum;
  out.mean = mean;
  return out;
}

CountingDistribution counting_distribution(const FredholmProblem& problem, int n_max) {
  return counting_from_eigenvalues(nystrom_eigenvalues(problem).eigenvalues, n_max);
}

double gap_asymptote(const KernelFamily& family, double z, double length, double xi) {
  if (!(length >= 0.0)) throw std::invalid_argument("gap_asymptote: length must be nonnegative");
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("gap_asymptote: xi must lie in [0, 1]");
  if (!(z >= 0.0)) throw std::invalid_argument("gap_asymptote: z must be nonnegative");
  if (xi == 0.0 || z == 0.0) return 1.0;
  const SpectralDensity sd = SpectralDensity::thermo(family);
  const auto b = sd.breakpoints(z);
  if (b.size() < 2) return 1.0;
  const double factor = sd.even() ? 2.0 : 1.0;
  // log(1 - xi x/(1+x)) = log1p((1 - xi) x) - log1p(x)
  double v;
  if (family.builtin() == Builtin::InverseArgument) {
    const double a = std::log(2.0 * kPi * z), eps = family.eps();
    auto softplus = [](double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); };
    v = integrate(
            [&](double s) {
              const double e = a - 4.0 * kPi * eps * s;  // log(z lambda)
              const double keep = xi < 1.0 ? softplus(e + std::log1p(-xi)) : 0.0;
              return keep - softplus(e);
            },
            std::span<const double>(b))
            .value;
  } else {
    v = integrate(
            [&](double s) {
              const double x = z * std::max(sd(s), 0.0);
              return factor * (std::log1p((1.0 - xi) * x) - std::log1p(x));
            },
            std::span<const double>(b))
            .value;
  }
  return std::exp(length * v);
}

// ---------------------------------------------------------------------------

double momentum_cutoff(double beta, double mu) {
  if (!(beta > 0.0)) throw std::invalid_argument("momentum_cutoff: beta must be positive");
  const double top2 = mu + std::log(1e14) / beta;
  if (!(top2 > 0.0)) throw NumericalError("momentum_cutoff: Fermi weight below 1e-14 everywhere");
  return std::sqrt(top2);
}

double momentum_kernel(double beta, double mu, double x, double k, double s) {
  auto weight = [&](double q) {
    const double e = beta * (q * q - mu);
    return e > 0.0 ? std::exp(-e) / (1.0 + std::exp(-e)) : 1.0 / (1.0 + std::exp(e));
  };
  const double d = k - s;
  const double core = std::abs(x * d) < 1e-6 ? x / kPi * (1.0 - (x * d) * (x * d) / 6.0) : std::sin(x * d) / (kPi * d);
  return std::sqrt(weight(k) * weight(s)) * core;
}

double momentum_log_det(double beta, double mu, double x, double xi, double k_max, int n) {
  if (xi == 0.0) return 0.0;
  const GaussLegendreRule& gl = gauss_legendre(n);
  std::vector<double> k(n), sw(n);
  for (int i = 0; i < n; ++i) {
    k[i] = k_max * gl.nodes[i];
    sw[i] = std::sqrt(k_max * gl.weights[i]);
  }
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = sw[i] * momentum_kernel(beta, mu, x, k[i], k[j]) * sw[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  double log_det = 0.0;
  for (int i = 0; i < n; ++i) {
    const double l = es.eigenvalues()(i);
    if (!(l > -kEigenSlack && l < 1.0 + kEigenSlack))
      throw NumericalError("momentum kernel: eigenvalue " + std::to_string(l) + " outside (0, 1)");
    log_det += std::log1p(-xi * std::clamp(l, 0.0, 1.0));
  }
  return log_det;
}

namespace {

// Smallest n = 16 * 2^k whose determinant agrees with 2n to the gate.
int momentum_nodes(double beta, double mu, double x, double xi, double k_max, double gate) {
  int n = 16;
  double prev = std::exp(momentum_log_det(beta, mu, x, xi, k_max, n));
  for (int k = 0; k < 6; ++k) {
    const double next = std::exp(momentum_log_det(beta, mu, x, xi, k_max, 2 * n));
    if (std::abs(next - prev) < gate) return 2 * n;
    prev = next;
    n *= 2;
  }
  throw NumericalError("momentum kernel: determinant not stable");
}

}  // namespace

double IikResult::rel_diff() const { return std::abs(det_direct - det_momentum) / std::abs(det_momentum); }

IikResult iik_equivalence(double beta, double mu, double x, double xi) {
  if (!(beta > 0.0)) throw std::invalid_argument("iik_equivalence: beta must be positive");
  if (!(x > 0.0)) throw std::invalid_argument("iik_equivalence: x must be positive");
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("iik_equivalence: xi must lie in [0, 1]");
  IikResult out;
  if (xi == 0.0) {
    out.det_direct = out.det_momentum = 1.0;
    return out;
  }
  out.det_direct = fredholm_det(FredholmProblem::of(fermion_correlation_kernel(beta, mu), -x, x, xi));
  const double k_max = momentum_cutoff(beta, mu);
  const int n = momentum_nodes(beta, mu, x, xi, k_max, kDetGate);
  out.det_momentum = std::exp(momentum_log_det(beta, mu, x, xi, k_max, n));
  return out;
}

SmallXCheck sigma_small_x_check(double t, double xi, std::span<const double> x_grid) {
  if (x_grid.size() < 3) throw std::invalid_argument("sigma_small_x_check: need at least three x values");
  for (double x : x_grid)
    if (!(x > 0.0 && x <= 0.05)) throw std::invalid_argument("sigma_small_x_check: x must lie in (0, 0.05]");
  SmallXCheck out;
  const double k_max = momentum_cutoff(1.0, t);
  const double bp[3] = {-k_max, 0.0, k_max};
  out.I = integrate([&](double l) { return 1.0 / (1.0 + std::exp(l * l - t)); }, std::span<const double>(bp)).value;
  out.linear_expected = -xi / kPi * out.I;
  out.quadratic_expected = -xi * xi / (2.0 * kPi * kPi) * out.I * out.I;

  const double x_top = *std::max_element(x_grid.begin(), x_grid.end());
  const int n = xi == 0.0 ? 16 : momentum_nodes(1.0, t, x_top, xi, k_max, 1e-14);
  const int m = static_cast<int>(x_grid.size());
  Eigen::MatrixXd V(m, 3);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const double x = x_grid[i];
    const double s = momentum_log_det(1.0, t, x, xi, k_max, n);
    out.sigma.push_back(s);
    const double dev = std::abs(s - (out.linear_expected * x + out.quadratic_expected * x * x));
    out.deviation.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
    V(i, 0) = x;
    V(i, 1) = x * x;
    V(i, 2) = x * x * x;
    y(i) = s;
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  out.linear_fit = c(0);
  out.quadratic_fit = c(1);
  return out;
}

// ---------------------------------------------------------------------------

double sine_log_det(double tau, double xi, int n) {
  if (xi == 0.0) return 0.0;
  const GaussLegendreRule& gl = gauss_legendre(n);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double d = gl.nodes[i] - gl.nodes[j];
      const double k = std::abs(tau * d) < 1e-6 ? tau / kPi * (1.0 - (tau * d) * (tau * d) / 6.0)
                                                 : std::sin(tau * d) / (kPi * d);
      A(i, j) = A(j, i) = std::sqrt(gl.weights[i] * gl.weights[j]) * k;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  double log_det = 0.0;
  for (int i = 0; i < n; ++i) log_det += std::log1p(-xi * std::clamp(es.eigenvalues()(i), 0.0, 1.0));
  return log_det;
}

namespace {

struct Derivs {
  double d1, d2, d3;
};

// five-point central stencils
Derivs stencil5(const std::function<double(double)>& f, double x, double h) {
  const double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  return {(-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h), (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h),
          (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h)};
}

bool disagree(double a, double b, double frac, double floor) {
  return std::abs(a - b) > frac * std::max(std::abs(a), std::abs(b)) + floor;
}

}  // namespace

OdeResidual sine_sigma_ode_residual(std::span<const double> tau_grid, double xi, double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw std::invalid_argument("sine_sigma_ode_residual: need 0 < h <= 1e-2");
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("sine_sigma_ode_residual: xi must lie in [0, 1]");
  OdeResidual out;
  if (tau_grid.empty()) return out;
  double tau_top = 0.0;
  for (double t : tau_grid) {
    if (!(t > 2 * h)) throw std::invalid_argument("sine_sigma_ode_residual: tau must exceed the stencil width");
    tau_top = std::max(tau_top, t);
  }
  // one node count for every stencil point
  int n = 16;
  if (xi > 0.0) {
    for (;; n *= 2) {
      if (n > 512) throw NumericalError("sine_sigma_ode_residual: determinant not stable");
      if (std::abs(sine_log_det(tau_top + 2 * h, xi, 2 * n) - sine_log_det(tau_top + 2 * h, xi, n)) < 1e-14) {
        n *= 2;
        break;
      }
    }
  }
  out.nodes = n;
  const std::function<double(double)> f = [&](double tau) { return sine_log_det(tau, xi, n); };
  for (double tau : tau_grid) {
    const Derivs a = stencil5(f, tau, h), b = stencil5(f, tau, 0.5 * h);
    if (disagree(a.d1, b.d1, 0.1, 1e-8) || disagree(a.d2, b.d2, 0.1, 1e-6) || disagree(a.d3, b.d3, 0.1, 1e-4))
      throw NumericalError("sine_sigma_ode_residual: finite differences unstable at tau = " + std::to_string(tau));
    // Richardson: the first two stencils are fourth order, the third is second order
    const double f1 = (16 * b.d1 - a.d1) / 15, f2 = (16 * b.d2 - a.d2) / 15, f3 = (4 * b.d3 - a.d3) / 3;
    const double s = tau * f1, sp = f1 + tau * f2, spp = 2 * f2 + tau * f3;
    const double lhs = (tau * spp) * (tau * spp);
    const double r = lhs + 4.0 * (tau * sp - s) * (4.0 * tau * sp + sp * sp - 4.0 * s);
    out.tau.push_back(tau);
    out.sigma0.push_back(s);
    out.residual.push_back(std::abs(r) / (lhs + 1.0));
    out.max_residual = std::max(out.max_residual, out.residual.back());
  }
  return out;
}

PdeResidual sigma_pde_residual(std::span<const double> x_grid, std::span<const double> t_grid, double xi,
                               double h) {
  if (!(h > 0.0)) throw std::invalid_argument("sigma_pde_residual: h must be positive");
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("sigma_pde_residual: xi must lie in [0, 1]");
  PdeResidual out;
  out.x.assign(x_grid.begin(), x_grid.end());
  out.t.assign(t_grid.begin(), t_grid.end());
  if (x_grid.empty() || t_grid.empty()) return out;
  double x_top = 0.0, t_top = -1e300;
  for (double x : x_grid) {
    if (!(x > h)) throw std::invalid_argument("sigma_pde_residual: x must exceed the stencil width");
    x_top = std::max(x_top, x);
  }
  for (double t : t_grid) t_top = std::max(t_top, t);
  // fixed cutoff and node count across all stencils
  const double k_max = momentum_cutoff(1.0, t_top + h);
  const int n = xi == 0.0 ? 16 : momentum_nodes(1.0, t_top + h, x_top + h, xi, k_max, 1e-14);
  auto sigma = [&](double x, double t) { return momentum_log_det(1.0, t, x, xi, k_max, n); };

  struct D {
    double t, xx, tx, txx;
  };
  auto derivs = [&](double x, double t, double s) {
    double v[3][3];
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j) v[i + 1][j + 1] = sigma(x + i * s, t + j * s);
    D d;
    d.t = (v[1][2] - v[1][0]) / (2 * s);
    d.xx = (v[2][1] - 2 * v[1][1] + v[0][1]) / (s * s);
    d.tx = (v[2][2] - v[2][0] - v[0][2] + v[0][0]) / (4 * s * s);
    const double xx_plus = (v[2][2] - 2 * v[1][2] + v[0][2]) / (s * s);
    const double xx_minus = (v[2][0] - 2 * v[1][0] + v[0][0]) / (s * s);
    d.txx = (xx_plus - xx_minus) / (2 * s);
    return d;
  };

  for (double x : x_grid)
    for (double t : t_grid) {
      const D a = derivs(x, t, h);
      if (xi == 0.0) {
        out.residual.push_back(0.0);
        out.noisy.push_back(false);
        continue;
      }
      const D b = derivs(x, t, 0.5 * h);
      const bool noisy = disagree(a.t, b.t, 0.5, 0.0) || disagree(a.xx, b.xx, 0.5, 0.0) ||
                         disagree(a.tx, b.tx, 0.5, 0.0) || disagree(a.txx, b.txx, 0.5, 0.0);
      const double r = a.txx * a.txx + 4.0 * a.xx * (2.0 * x * a.tx + a.tx * a.tx - 2.0 * a.t);
      const double scale =
          a.txx * a.txx + std::abs(4.0 * a.xx) * (std::abs(2.0 * x * a.tx) + a.tx * a.tx + std::abs(2.0 * a.t));
      const double nr = scale > 0.0 ? std::abs(r) / scale : 0.0;
      out.residual.push_back(nr);
      out.noisy.push_back(noisy);
      out.max_residual = std::max(out.max_residual, nr);
    }
  return out;
}

}  // namespace circlens
