#ifndef CIRCLENS_FREDHOLM_HPP
#define CIRCLENS_FREDHOLM_HPP

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "circlens/model.hpp"
#include "circlens/spectral_limits.hpp"

namespace circlens {

using KernelFn = std::function<std::complex<double>(double, double)>;

/// det(I - xi K_J) for a Hermitian kernel on J = (a, b).
struct FredholmProblem {
  KernelFn kernel;
  /// When set, the Nystrom matrix is assembled from the kernel's spectral rule
  /// instead of pointwise kernel calls.
  std::optional<CorrelationKernel> translation_invariant;
  double a = 0.0;
  double b = 1.0;
  double xi = 1.0;
  int n = 32;  // starting node count

  static FredholmProblem of(const CorrelationKernel& k, double a, double b, double xi = 1.0, int n = 32);
  static FredholmProblem of(KernelFn k, double a, double b, double xi = 1.0, int n = 32);
};

struct NystromResult {
  std::vector<double> eigenvalues;  // descending
  int n = 0;                        // accepted node count
  double det_change = 0.0;          // |det(n) - det(n/2)|
};

/// Gauss-Legendre Nystrom with weights split symmetrically; n doubles until
/// det(I - xi K) moves by less than 1e-10 (at most four doublings).
NystromResult nystrom_eigenvalues(const FredholmProblem& problem);
/// Eigenvalues at exactly n nodes, no convergence gate.
std::vector<double> nystrom_eigenvalues_fixed(const FredholmProblem& problem, int n);

double fredholm_det(const FredholmProblem& problem);
double gap_probability(FredholmProblem problem);
double det_from_eigenvalues(std::span<const double> eigenvalues, double xi);

struct CountingDistribution {
  std::vector<double> E;  // E(0..n_max; J)
  double tail = 0.0;      // 1 - sum E
  double mean = 0.0;      // sum n E(n) over all n (equals the trace)
};

/// Coefficients of prod_j ((1 - lambda_j) + eta lambda_j) in eta = 1 - xi.
CountingDistribution counting_distribution(const FredholmProblem& problem, int n_max);
CountingDistribution counting_from_eigenvalues(std::span<const double> eigenvalues, int n_max);

/// exp(|J| int log(1 - xi K^(s)) ds) with K^ = z lambda / (1 + z lambda).
double gap_asymptote(const KernelFamily& family, double z, double length, double xi);

/// Momentum-space kernel sqrt(F(k)) sin(x (k - s)) / (pi (k - s)) sqrt(F(s)),
/// F(k) = 1/(e^{beta (k^2 - mu)} + 1).
double momentum_kernel(double beta, double mu, double x, double k, double s);
/// |k| <= k_max where the Fermi weight drops below 1e-14.
double momentum_cutoff(double beta, double mu);
/// log det(I - xi K~) on [-k_max, k_max] with n fixed nodes.
double momentum_log_det(double beta, double mu, double x, double xi, double k_max, int n);

struct IikResult {
  double det_direct = 0.0;    // fermion kernel on (-x, x)
  double det_momentum = 0.0;  // momentum kernel on the real line
  double rel_diff() const;
};

IikResult iik_equivalence(double beta, double mu, double x, double xi);

/// sigma(x) = log det(I - xi K~) at beta = 1, mu = t against
/// -(xi/pi) I x - (xi^2 / 2 pi^2) I^2 x^2, I = int d lambda / (1 + e^{lambda^2 - t}).
struct SmallXCheck {
  double I = 0.0;
  double linear_expected = 0.0;
  double quadratic_expected = 0.0;
  double linear_fit = 0.0;     // least squares over the grid with a cubic term
  double quadratic_fit = 0.0;
  std::vector<double> sigma;       // per grid point
  std::vector<double> deviation;   // |sigma - two-term expansion|
  double max_deviation = 0.0;
};

SmallXCheck sigma_small_x_check(double t, double xi, std::span<const double> x_grid);

/// log det(I - xi K) for sin(tau (x - y)) / (pi (x - y)) on (-1, 1).
double sine_log_det(double tau, double xi, int n);

struct OdeResidual {
  std::vector<double> tau;
  std::vector<double> sigma0;
  std::vector<double> residual;  // normalized by (tau sigma0'')^2 + 1
  double max_residual = 0.0;
  int nodes = 0;
};

/// Residual of (tau s'')^2 + 4 (tau s' - s)(4 tau s' + s'^2 - 4 s) for
/// s = tau d/dtau log det. Five-point central differences with spacing h; a
/// derivative whose estimates at h and h/2 differ by more than 10% throws.
OdeResidual sine_sigma_ode_residual(std::span<const double> tau_grid, double xi, double h = 0.01);

struct PdeResidual {
  std::vector<double> x, t;
  std::vector<double> residual;  // row-major over (x, t), normalized by the term scale
  std::vector<bool> noisy;       // refinement changed a derivative by more than 50%
  double max_residual = 0.0;
};

/// Residual of (s_txx)^2 + 4 s_xx (2 x s_tx + s_tx^2 - 2 s_t) for
/// s(x, t) = log det(I - xi K~) at beta = 1, mu = t. Diagnostic only.
PdeResidual sigma_pde_residual(std::span<const double> x_grid, std::span<const double> t_grid, double xi,
                               double h = 0.02);

}  // namespace circlens

#endif  // CIRCLENS_FREDHOLM_HPP
