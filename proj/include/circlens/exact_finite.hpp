#ifndef CIRCLENS_EXACT_FINITE_HPP
#define CIRCLENS_EXACT_FINITE_HPP

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "circlens/model.hpp"

namespace circlens {

/// Hermitian positive semidefinite L-matrix.
struct LMatrix {
  Eigen::MatrixXcd entries;
  bool circulant = false;

  /// Validates Hermitian symmetry (1e-12 relative to the largest entry) and
  /// eigenvalues >= -1e-10; circulant structure is checked when flagged.
  static LMatrix from_dense(Eigen::MatrixXcd entries, bool circulant = false);
  int size() const { return static_cast<int>(entries.rows()); }
};

/// Entries g((L/pi) sin(pi (j - l) / M)).
LMatrix build_circulant(const CirculantEnsemble& ens);

/// lambda_p for p = first_mode(M) .. last_mode(M).
struct CirculantSpectrum {
  int p0 = 0;
  std::vector<double> lambda;

  double at(int p) const { return lambda.at(static_cast<std::size_t>(p - p0)); }
  int size() const { return static_cast<int>(lambda.size()); }
};

CirculantSpectrum circulant_eigenvalues(const CirculantEnsemble& ens);

double partition_function(const CirculantEnsemble& ens);
double log_partition_function(const CirculantEnsemble& ens);
/// det(I + z L) by LU.
double dense_partition_function(const LMatrix& L, double z);
/// Subset sum over all 2^M configurations, M <= 14.
double brute_force_partition(const CirculantEnsemble& ens);
double brute_force_partition(const LMatrix& L, double z);

/// K = z L (I + z L)^{-1}.
Eigen::MatrixXcd macchi_kernel(const LMatrix& L, double z);

/// Translation-invariant finite kernel; values by offset (y - x) mod M.
class FiniteKernel {
 public:
  explicit FiniteKernel(const CirculantEnsemble& ens);
  /// Sites are 1-based.
  std::complex<double> operator()(int x, int y) const;
  std::complex<double> at_offset(int d) const;
  double density() const { return offsets_[0].real(); }
  int M() const { return M_; }
  /// Sum of z lambda_p / (1 + z lambda_p): expected particle number.
  double mean_count() const { return mean_count_; }

 private:
  int M_;
  std::vector<std::complex<double>> offsets_;
  double mean_count_ = 0.0;
};

std::complex<double> kernel_finite(const CirculantEnsemble& ens, int x, int y);

/// det of the K-submatrix at 1-based distinct sites.
double correlation(const CirculantEnsemble& ens, std::span<const int> sites);
double correlation(const FiniteKernel& K, std::span<const int> sites);
/// Same from a dense kernel matrix (0-based indices).
double correlation_dense(const Eigen::MatrixXcd& K, std::span<const int> sites0);

/// Sum of configuration probabilities over supersets of the sites, M <= 14.
double brute_force_correlation(const CirculantEnsemble& ens, std::span<const int> sites);

struct CauchyCheck {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double rel_diff() const { return std::abs(lhs - rhs) / std::abs(rhs); }
};

/// det[i h((L/pi) sin(pi (X_j - X_k + 2 i eps)/L))] with h(u) = 1/u versus the
/// closed product (-1)^{N(N-1)/2} (pi i/L)^N prod_{j<k} sin^2(pi (X_k - X_j)/L) /
/// prod_{j,k} sin(pi (X_j - X_k + 2 i eps)/L).
CauchyCheck cauchy_determinant_check(std::span<const double> points, double eps, double L);

}  // namespace circlens

#endif  // CIRCLENS_EXACT_FINITE_HPP
