#include "circlens/exact_finite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <quadmath.h>

#include "circlens/errors.hpp"
#include "circlens/fft.hpp"

namespace circlens {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = -1e-10;
constexpr int kBruteForceMax = 14;

void require_real_even(const CirculantEnsemble& ens, const char* who) {
  if (ens.is_continuum() || ens.family().kind() == FamilyKind::ComplexOdd)
    throw std::invalid_argument(std::string(who) + ": needs a real even lattice family");
  if (ens.family().kind() == FamilyKind::RealEvenD && ens.family().dimension() != 1)
    throw std::invalid_argument(std::string(who) + ": family must be one dimensional");
}

std::vector<double> first_row(const CirculantEnsemble& ens) {
  const int M = ens.M();
  std::vector<double> row(M);
  // chord(l) and chord(M - l) agree only to rounding; use the smaller offset
  for (int l = 0; l < M; ++l) row[l] = ens.family().g(chord(std::min(l, M - l), M, ens.L()));
  return row;
}

double principal_minor(const Eigen::MatrixXcd& A, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXcd sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = A(idx[a], idx[b]);
  return sub.partialPivLu().determinant().real();
}

void check_sites(std::span<const int> sites, int M) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 1 || sites[i] > M)
      throw std::invalid_argument("site " + std::to_string(sites[i]) + " outside 1.." + std::to_string(M));
    for (std::size_t j = 0; j < i; ++j)
      if (sites[i] == sites[j]) throw std::invalid_argument("repeated site " + std::to_string(sites[i]));
  }
}


using Quad = __float128;

struct QComplex {
  Quad re, im;
  QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
  QComplex operator-(const QComplex& o) const { return {re - o.re, im - o.im}; }
  QComplex operator*(const QComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  QComplex operator/(const QComplex& o) const {
    const Quad d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Quad norm() const { return re * re + im * im; }
  std::complex<double> to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

// sin(x + i y)
QComplex qsin(Quad x, Quad y) { return {sinq(x) * coshq(y), cosq(x) * sinhq(y)}; }

// Gaussian elimination with partial pivoting, row-major n x n
QComplex qdet(std::vector<QComplex> a, int n) {
  QComplex det{1, 0};
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (a[r * n + c].norm() > a[piv * n + c].norm()) piv = r;
    if (a[piv * n + c].norm() == 0) return {0, 0};
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = det * QComplex{-1, 0};
    }
    det = det * a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const QComplex f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] = a[r * n + k] - f * a[c * n + k];
    }
  }
  return det;
}

}  // namespace

LMatrix LMatrix::from_dense(Eigen::MatrixXcd entries, bool circulant) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw std::invalid_argument("LMatrix: matrix must be square and nonempty");
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw std::invalid_argument("LMatrix: matrix is not Hermitian");
  const int M = static_cast<int>(entries.rows());
  if (circulant) {
    for (int r = 1; r < M; ++r)
      for (int c = 0; c < M; ++c)
        if (std::abs(entries(r, c) - entries(0, ((c - r) % M + M) % M)) > kHermitianTol * scale)
          throw std::invalid_argument("LMatrix: rows are not cyclic shifts of row 0");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdTol)
    throw std::invalid_argument("LMatrix: matrix is not positive semidefinite (eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
  return LMatrix{std::move(entries), circulant};
}

LMatrix build_circulant(const CirculantEnsemble& ens) {
  require_real_even(ens, "build_circulant");
  const int M = ens.M();
  const std::vector<double> row = first_row(ens);
  Eigen::MatrixXcd A(M, M);
  for (int j = 0; j < M; ++j)
    for (int l = 0; l < M; ++l) A(j, l) = row[((l - j) % M + M) % M];
  LMatrix out;
  out.entries = std::move(A);
  out.circulant = true;
  return out;
}

CirculantSpectrum circulant_eigenvalues(const CirculantEnsemble& ens) {
  require_real_even(ens, "circulant_eigenvalues");
  const int M = ens.M();
  const std::vector<double> row = first_row(ens);
  std::vector<std::complex<double>> in(row.begin(), row.end());
  // lambda_p = sum_l row[l] e^{2 pi i l p / M}
  const auto out = dft(in, +1);
  CirculantSpectrum spectrum;
  spectrum.p0 = first_mode(M);
  spectrum.lambda.resize(M);
  double scale = 0.0;
  for (double v : row) scale += std::abs(v);
  for (int p = spectrum.p0; p <= last_mode(M); ++p) {
    const std::complex<double> v = out[((p % M) + M) % M];
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, scale))
      throw NumericalError("circulant_eigenvalues: eigenvalue has imaginary part " + std::to_string(v.imag()));
    if (v.real() < kPsdTol * std::max(1.0, scale))
      throw std::invalid_argument("circulant_eigenvalues: negative eigenvalue " + std::to_string(v.real()) +
                                  " at p = " + std::to_string(p));
    spectrum.lambda[p - spectrum.p0] = v.real();
  }
  return spectrum;
}

double log_partition_function(const CirculantEnsemble& ens) {
  const CirculantSpectrum spectrum = circulant_eigenvalues(ens);
  double sum = 0.0;
  for (double l : spectrum.lambda) sum += std::log1p(ens.z() * std::max(l, 0.0));
  return sum;
}

double partition_function(const CirculantEnsemble& ens) { return std::exp(log_partition_function(ens)); }

double dense_partition_function(const LMatrix& L, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("dense_partition_function: z must be nonnegative");
  const int M = L.size();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(M, M) + z * L.entries;
  return A.partialPivLu().determinant().real();
}

double brute_force_partition(const LMatrix& L, double z) {
  const int M = L.size();
  if (M > kBruteForceMax) throw std::invalid_argument("brute_force_partition: M exceeds 14");
  if (!(z >= 0.0)) throw std::invalid_argument("brute_force_partition: z must be nonnegative");
  // Gray-code walk over subsets; each minor is recomputed from scratch
  double total = 1.0;
  unsigned mask = 0;
  std::vector<int> idx;
  for (unsigned i = 1; i < (1u << M); ++i) {
    const unsigned gray = i ^ (i >> 1);
    mask = gray;
    idx.clear();
    for (int s = 0; s < M; ++s)
      if (mask & (1u << s)) idx.push_back(s);
    total += std::pow(z, static_cast<double>(idx.size())) * principal_minor(L.entries, idx);
  }
  return total;
}

double brute_force_partition(const CirculantEnsemble& ens) {
  if (ens.M() > kBruteForceMax) throw std::invalid_argument("brute_force_partition: M exceeds 14");
  return brute_force_partition(build_circulant(ens), ens.z());
}

Eigen::MatrixXcd macchi_kernel(const LMatrix& L, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("macchi_kernel: z must be nonnegative");
  const int M = L.size();
  const Eigen::MatrixXcd zL = z * L.entries;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Eigen::MatrixXcd::Identity(M, M) + zL);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("macchi_kernel: I + zL is numerically singular");
  // zL and (I + zL)^{-1} commute
  Eigen::MatrixXcd K = lu.solve(zL);
  return 0.5 * (K + K.adjoint());
}

FiniteKernel::FiniteKernel(const CirculantEnsemble& ens) : M_(ens.M()) {
  const CirculantSpectrum spectrum = circulant_eigenvalues(ens);
  const double z = ens.z();
  std::vector<std::complex<double>> weights(M_);
  for (int p = spectrum.p0; p <= last_mode(M_); ++p) {
    const double l = std::max(spectrum.at(p), 0.0);
    const double k = z * l / (1.0 + z * l);
    weights[((p % M_) + M_) % M_] = k;
    mean_count_ += k;
  }
  // K(x, x + d) = (1/M) sum_p k_p e^{2 pi i d p / M}
  offsets_ = dft(weights, +1);
  for (auto& v : offsets_) v /= static_cast<double>(M_);
}

std::complex<double> FiniteKernel::at_offset(int d) const { return offsets_[((d % M_) + M_) % M_]; }

std::complex<double> FiniteKernel::operator()(int x, int y) const {
  if (x < 1 || x > M_ || y < 1 || y > M_) throw std::invalid_argument("kernel: site outside 1..M");
  return at_offset(y - x);
}

std::complex<double> kernel_finite(const CirculantEnsemble& ens, int x, int y) {
  return FiniteKernel(ens)(x, y);
}

double correlation_dense(const Eigen::MatrixXcd& K, std::span<const int> sites0) {
  const int k = static_cast<int>(sites0.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXcd sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = K(sites0[a], sites0[b]);
  return sub.partialPivLu().determinant().real();
}

double correlation(const FiniteKernel& K, std::span<const int> sites) {
  check_sites(sites, K.M());
  const int k = static_cast<int>(sites.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXcd sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = K(sites[a], sites[b]);
  return sub.partialPivLu().determinant().real();
}

double correlation(const CirculantEnsemble& ens, std::span<const int> sites) {
  check_sites(sites, ens.M());
  return correlation(FiniteKernel(ens), sites);
}

double brute_force_correlation(const CirculantEnsemble& ens, std::span<const int> sites) {
  const int M = ens.M();
  if (M > kBruteForceMax) throw std::invalid_argument("brute_force_correlation: M exceeds 14");
  check_sites(sites, M);
  const LMatrix L = build_circulant(ens);
  const double z = ens.z();
  unsigned fixed = 0;
  for (int s : sites) fixed |= 1u << (s - 1);
  std::vector<int> free;
  for (int s = 0; s < M; ++s)
    if (!(fixed & (1u << s))) free.push_back(s);
  const int nfree = static_cast<int>(free.size());
  double numer = 0.0;
  std::vector<int> idx;
  for (unsigned i = 0; i < (1u << nfree); ++i) {
    const unsigned gray = i ^ (i >> 1);
    unsigned mask = fixed;
    for (int b = 0; b < nfree; ++b)
      if (gray & (1u << b)) mask |= 1u << free[b];
    idx.clear();
    for (int s = 0; s < M; ++s)
      if (mask & (1u << s)) idx.push_back(s);
    numer += std::pow(z, static_cast<double>(idx.size())) * principal_minor(L.entries, idx);
  }
  return numer / brute_force_partition(L, z);
}

CauchyCheck cauchy_determinant_check(std::span<const double> points, double eps, double L) {
  const int N = static_cast<int>(points.size());
  if (N < 2 || N > 8) throw std::invalid_argument("cauchy_determinant_check: need 2 <= N <= 8");
  if (!(eps > 0.0) || !(L > 0.0)) throw std::invalid_argument("cauchy_determinant_check: eps and L must be positive");
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < j; ++k)
      if (std::abs(std::sin(std::numbers::pi * (points[j] - points[k]) / L)) < 1e-12)
        throw std::invalid_argument("cauchy_determinant_check: coincident points");
  // Near-coincident points make the determinant tiny against its entries,
  // so both sides are evaluated in quad precision.
  const int n = N;
  const Quad pi = M_PIq;
  const Quad len = L, two_eps = 2.0 * static_cast<Quad>(eps);
  auto s = [&](int j, int k) {
    return qsin(pi * (static_cast<Quad>(points[j]) - static_cast<Quad>(points[k])) / len, pi * two_eps / len);
  };

  std::vector<QComplex> a(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a[j * n + k] = QComplex{0, 1} / (QComplex{len / pi, 0} * s(j, k));
  const QComplex det = qdet(a, n);

  // pairing sin(a + 2 i eps) sin(-a + 2 i eps) = -(sin^2 a + sinh^2) makes the
  // printed product negative for N = 2, 3 mod 4; restore the sign
  QComplex rhs{static_cast<Quad>(((n * (n - 1) / 2) % 2) ? -1 : 1), 0};
  for (int j = 0; j < n; ++j) rhs = rhs * QComplex{0, pi / len};
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const Quad sn = sinq(pi * (static_cast<Quad>(points[k]) - static_cast<Quad>(points[j])) / len);
      rhs = rhs * QComplex{sn * sn, 0};
    }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) rhs = rhs / s(j, k);

  CauchyCheck out;
  out.lhs = det.to_double();
  out.rhs = rhs.to_double();
  return out;
}

}  // namespace circlens
