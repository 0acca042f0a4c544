#include "circlens/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "circlens/errors.hpp"
#include "circlens/fft.hpp"
#include "circlens/parallel.hpp"
#include "circlens/random.hpp"
#include "circlens/spectral_limits.hpp"

namespace circlens {

namespace {

constexpr double kPivotFloor = 1e-12;
constexpr int kMaxRedraws = 64;
constexpr std::int64_t kMaxSites = std::int64_t{1} << 20;

double chord_index(int j, int M, double L) {
  const int m = std::min(j, M - j);
  return L / std::numbers::pi * std::sin(std::numbers::pi * m / M);
}

}  // namespace

TensorLattice::TensorLattice(int d, int M, double L, double z, KernelFamily family)
    : d_(d), M_(M), L_(L), z_(z), family_(std::move(family)) {
  if (d < 1) throw std::invalid_argument("TensorLattice: d must be at least 1");
  if (M < 1) throw std::invalid_argument("TensorLattice: M must be at least 1");
  if (!(L > 0.0)) throw std::invalid_argument("TensorLattice: L must be positive");
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("TensorLattice: z must be nonnegative");
  sites_ = 1;
  for (int i = 0; i < d; ++i) {
    sites_ *= M;
    if (sites_ > kMaxSites) throw std::invalid_argument("TensorLattice: more than 2^20 sites");
  }
  switch (family_.kind()) {
    case FamilyKind::ComplexOdd:
      throw std::invalid_argument("TensorLattice: complex families cannot be sampled");
    case FamilyKind::RealEven:
      if (d != 1) throw std::invalid_argument("TensorLattice: one-dimensional family needs d = 1");
      break;
    case FamilyKind::RealEvenD:
      if (family_.dimension() != d) throw std::invalid_argument("TensorLattice: family dimension differs from d");
      break;
  }

  std::vector<double> chords(M);
  for (int j = 0; j < M; ++j) chords[j] = chord_index(j, M, L);
  std::vector<std::complex<double>> row(static_cast<std::size_t>(sites_));
  std::vector<double> u(d);
  for (std::int64_t f = 0; f < sites_; ++f) {
    std::int64_t rest = f;
    for (int i = d - 1; i >= 0; --i) {
      u[i] = chords[rest % M];
      rest /= M;
    }
    row[f] = d == 1 && family_.kind() == FamilyKind::RealEven ? family_.g(u[0]) : family_.g(std::span<const double>(u));
  }
  std::vector<std::complex<double>> ev;
  if (d == 1) {
    ev = dft(row, +1);
  } else {
    const std::vector<int> dims(d, M);
    ev = dft_nd(row, dims, +1);
  }
  double scale = 0.0;
  for (const auto& v : ev) scale = std::max(scale, std::abs(v));
  lambda_.resize(ev.size());
  for (std::size_t p = 0; p < ev.size(); ++p) {
    if (std::abs(ev[p].imag()) > 1e-10 * std::max(1.0, scale))
      throw NumericalError("TensorLattice: eigenvalue with imaginary part");
    if (ev[p].real() < -1e-10 * std::max(1.0, scale))
      throw std::invalid_argument("TensorLattice: negative eigenvalue " + std::to_string(ev[p].real()));
    lambda_[p] = std::max(ev[p].real(), 0.0);
  }
}

std::vector<int> TensorLattice::unflatten(std::int64_t flat) const {
  std::vector<int> idx(d_);
  for (int i = d_ - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(flat % M_);
    flat /= M_;
  }
  return idx;
}

std::int64_t TensorLattice::flatten(const std::vector<int>& index) const {
  if (static_cast<int>(index.size()) != d_) throw std::invalid_argument("TensorLattice: index has the wrong length");
  std::int64_t f = 0;
  for (int v : index) f = f * M_ + ((v % M_) + M_) % M_;
  return f;
}

std::vector<double> bernoulli_probabilities(const TensorLattice& lattice) {
  std::vector<double> k(lattice.eigenvalues().size());
  const double z = lattice.z();
  for (std::size_t p = 0; p < k.size(); ++p) {
    const double x = z * lattice.eigenvalues()[p];
    k[p] = x / (1.0 + x);
  }
  return k;
}

namespace {

// Two-stage spectral sampler: Bernoulli(k_p) mode selection, then sequential
// sampling of the projection process spanned by the chosen modes. lambda_p is
// even in every coordinate of p, so the real basis 1, sqrt2 cos, sqrt2 sin,
// (-1)^x along each axis is an eigenbasis as well; mode m < M/2 maps to cos
// and m > M/2 to sin of frequency M - m.
class Sampler {
 public:
  explicit Sampler(const TensorLattice& lat) : lat_(lat), k_(bernoulli_probabilities(lat)) {
    const int M = lat.M();
    table_.resize(static_cast<std::size_t>(M) * M);
    const double base = 1.0 / std::sqrt(static_cast<double>(M)), r2 = std::sqrt(2.0) * base;
    for (int m = 0; m < M; ++m)
      for (int x = 0; x < M; ++x) {
        double v;
        if (m == 0) {
          v = base;
        } else if (2 * m == M) {
          v = x % 2 == 0 ? base : -base;
        } else if (2 * m < M) {
          v = r2 * std::cos(2.0 * std::numbers::pi * ((static_cast<long>(m) * x) % M) / M);
        } else {
          v = r2 * std::sin(2.0 * std::numbers::pi * ((static_cast<long>(M - m) * x) % M) / M);
        }
        table_[static_cast<std::size_t>(m) * M + x] = v;
      }
  }

  std::vector<std::int64_t> draw(std::uint64_t seed, std::uint64_t rep, std::int64_t& degenerate) const {
    PhiloxStream rng(seed, rep);
    std::vector<std::int64_t> modes;
    for (std::size_t p = 0; p < k_.size(); ++p)
      if (rng.uniform() < k_[p]) modes.push_back(static_cast<std::int64_t>(p));
    const int n = static_cast<int>(modes.size());
    std::vector<std::int64_t> points;
    if (n == 0) return points;

    const std::int64_t N = lat_.sites();
    const int d = lat_.d(), M = lat_.M();
    std::vector<int> pm(static_cast<std::size_t>(n) * d);
    for (int j = 0; j < n; ++j) {
      const auto idx = lat_.unflatten(modes[j]);
      for (int i = 0; i < d; ++i) pm[j * d + i] = idx[i];
    }
    // row-major N x n basis, columns orthonormal
    std::vector<double> V(static_cast<std::size_t>(N) * n);
    std::vector<double> q(N);
    std::vector<int> x(d, 0);
    for (std::int64_t f = 0; f < N; ++f) {
      double* row = &V[f * n];
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        double v = 1.0;
        for (int i = 0; i < d; ++i) v *= table_[static_cast<std::size_t>(pm[j * d + i]) * M + x[i]];
        row[j] = v;
        s += v * v;
      }
      q[f] = s;
      for (int i = d - 1; i >= 0; --i) {
        if (++x[i] < M) break;
        x[i] = 0;
      }
    }

    std::vector<double> h(n);
    for (int k = n; k >= 1; --k) {
      double total = 0.0;
      for (std::int64_t f = 0; f < N; ++f) total += q[f];
      std::int64_t pick = -1;
      for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        double u = rng.uniform() * total;
        std::int64_t f = 0;
        for (; f < N - 1; ++f) {
          u -= q[f];
          if (u < 0.0) break;
        }
        if (q[f] >= kPivotFloor) {
          pick = f;
          break;
        }
        ++degenerate;
      }
      if (pick < 0) throw NumericalError("sample: no admissible pivot");
      points.push_back(pick);
      if (k == 1) break;

      // Householder reflection taking row pick onto e_1; after it the other
      // k - 1 columns vanish at pick, and the last one replaces column 0.
      const double* r = &V[pick * n];
      double rn = 0.0;
      for (int j = 0; j < k; ++j) rn += r[j] * r[j];
      rn = std::sqrt(rn);
      for (int j = 0; j < k; ++j) h[j] = r[j] / rn;
      h[0] += h[0] >= 0.0 ? 1.0 : -1.0;
      double hn = 0.0;
      for (int j = 0; j < k; ++j) hn += h[j] * h[j];
      hn = std::sqrt(hn);
      for (int j = 0; j < k; ++j) h[j] /= hn;
      for (std::int64_t f = 0; f < N; ++f) {
        double* row = &V[f * n];
        double dot = 0.0;
        for (int j = 0; j < k; ++j) dot += row[j] * h[j];
        dot *= 2.0;
        double s = 0.0;
        row[0] = row[k - 1] - dot * h[k - 1];
        s += row[0] * row[0];
        for (int j = 1; j < k - 1; ++j) {
          row[j] -= dot * h[j];
          s += row[j] * row[j];
        }
        q[f] = s;
      }
    }
    std::sort(points.begin(), points.end());
    return points;
  }

 private:
  const TensorLattice& lat_;
  std::vector<double> k_;
  std::vector<double> table_;  // table_[m * M + x], one axis
};

template <class R, class F>
std::vector<R> map_replicates(const TensorLattice& lat, int reps, std::uint64_t seed, F f,
                              std::int64_t& degenerate) {
  const Sampler s(lat);
  std::vector<R> out(reps);
  std::vector<std::int64_t> deg(reps, 0);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
    const auto pts = s.draw(seed, r, deg[r]);
    out[r] = f(pts);
  });
  for (auto v : deg) degenerate += v;
  return out;
}

Estimate mean_and_error(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double m = 0.0;
  for (double v : y) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : y) ss += (v - m) * (v - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

void check_reps(int reps) {
  if (reps < 100) throw std::invalid_argument("estimators need at least 100 replicates");
}

// count of points in the box starting at every site, periodic
std::vector<int> box_counts(const TensorLattice& lat, const std::vector<std::int64_t>& pts,
                            const std::vector<int>& block) {
  const std::int64_t N = lat.sites();
  const int M = lat.M(), d = lat.d();
  std::vector<int> a(N, 0), b(N);
  for (auto p : pts) a[p] = 1;
  std::int64_t stride = 1;
  for (int axis = d - 1; axis >= 0; --axis) {
    const int w = block[axis];
    for (std::int64_t base = 0; base < N; ++base) {
      if ((base / stride) % M != 0) continue;
      // periodic sliding window along this axis
      int s = 0;
      for (int j = 0; j < w; ++j) s += a[base + static_cast<std::int64_t>(j % M) * stride];
      for (int i = 0; i < M; ++i) {
        b[base + i * stride] = s;
        s -= a[base + i * stride];
        s += a[base + static_cast<std::int64_t>((i + w) % M) * stride];
      }
    }
    a.swap(b);
    stride *= M;
  }
  return a;
}

}  // namespace

PointSample sample(const TensorLattice& lattice, std::uint64_t seed, std::uint64_t replicate, SampleStats* stats) {
  std::int64_t degenerate = 0;
  PointSample out;
  out.flat = Sampler(lattice).draw(seed, replicate, degenerate);
  for (auto f : out.flat) out.sites.push_back(lattice.unflatten(f));
  if (stats != nullptr) stats->degenerate_pivots += degenerate;
  return out;
}

DensityEstimate estimate_density(const TensorLattice& lattice, int reps, std::uint64_t seed) {
  check_reps(reps);
  DensityEstimate out;
  auto draws = map_replicates<std::vector<std::int64_t>>(
      lattice, reps, seed, [](const std::vector<std::int64_t>& p) { return p; }, out.degenerate_pivots);
  const std::int64_t N = lattice.sites();
  std::vector<double> counts(N, 0.0), card(reps);
  for (int r = 0; r < reps; ++r) {
    for (auto f : draws[r]) counts[f] += 1.0;
    card[r] = static_cast<double>(draws[r].size());
  }
  out.per_site.resize(N);
  out.per_site_stderr.resize(N);
  for (std::int64_t f = 0; f < N; ++f) {
    const double p = counts[f] / reps;
    out.per_site[f] = p;
    out.per_site_stderr[f] = std::sqrt(p * (1.0 - p) / reps);
  }
  out.cardinality = mean_and_error(card);
  out.site_average = {out.cardinality.mean / N, out.cardinality.std_error / N};
  // variance and the stderr of the sample variance from the fourth central moment
  double m2 = 0.0, m4 = 0.0;
  for (double c : card) {
    const double e = c - out.cardinality.mean;
    m2 += e * e;
    m4 += e * e * e * e;
  }
  const double n = reps;
  m2 /= n;
  m4 /= n;
  out.cardinality_variance = m2 * n / (n - 1.0);
  out.cardinality_variance_stderr = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  return out;
}

TwoPointEstimate estimate_two_point(const TensorLattice& lattice, const std::vector<int>& separation, int reps,
                                    std::uint64_t seed) {
  check_reps(reps);
  const std::int64_t target = lattice.flatten(separation);
  if (target == 0) throw std::invalid_argument("estimate_two_point: separation must be nonzero mod M");
  TwoPointEstimate out;
  const TensorLattice& lat = lattice;
  auto rows = map_replicates<std::pair<double, double>>(
      lattice, reps, seed,
      [&](const std::vector<std::int64_t>& p) {
        const bool origin = std::binary_search(p.begin(), p.end(), std::int64_t{0}) &&
                            std::binary_search(p.begin(), p.end(), target);
        std::int64_t pairs = 0;
        for (auto f : p) {
          auto idx = lat.unflatten(f);
          for (int i = 0; i < lat.d(); ++i) idx[i] += separation[i];
          if (std::binary_search(p.begin(), p.end(), lat.flatten(idx))) ++pairs;
        }
        return std::make_pair(origin ? 1.0 : 0.0, static_cast<double>(pairs) / lat.sites());
      },
      out.degenerate_pivots);
  std::vector<double> a(reps), b(reps);
  for (int r = 0; r < reps; ++r) {
    a[r] = rows[r].first;
    b[r] = rows[r].second;
  }
  const Estimate o = mean_and_error(a);
  out.origin = {o.mean, std::sqrt(o.mean * (1.0 - o.mean) / reps)};
  out.averaged = mean_and_error(b);
  return out;
}

namespace {

void check_block(const TensorLattice& lattice, const std::vector<int>& block) {
  if (static_cast<int>(block.size()) != lattice.d()) throw std::invalid_argument("block must have d sides");
  for (int b : block)
    if (b < 1 || b > lattice.M()) throw std::invalid_argument("block sides must lie in [1, M]");
}

}  // namespace

Estimate estimate_gap(const TensorLattice& lattice, const std::vector<int>& block, int reps, std::uint64_t seed) {
  check_reps(reps);
  check_block(lattice, block);
  std::int64_t degenerate = 0;
  auto y = map_replicates<double>(
      lattice, reps, seed,
      [&](const std::vector<std::int64_t>& p) {
        if (p.empty()) return 1.0;
        const auto c = box_counts(lattice, p, block);
        return static_cast<double>(std::count(c.begin(), c.end(), 0)) / lattice.sites();
      },
      degenerate);
  return mean_and_error(y);
}

std::vector<HoleRow> hole_probability_check(const TensorLattice& lattice, const std::vector<int>& sides, int reps,
                                            std::uint64_t seed) {
  check_reps(reps);
  if (lattice.d() != 2 || !lattice.family().is_gaussian())
    throw std::invalid_argument("hole_probability_check: needs a d = 2 Gaussian lattice");
  if (lattice.tau() > 0.125 + 1e-15) throw std::invalid_argument("hole_probability_check: needs tau <= 1/8");
  for (int s : sides) check_block(lattice, {s, s});
  const int nb = static_cast<int>(sides.size());
  std::int64_t degenerate = 0;
  auto y = map_replicates<std::vector<double>>(
      lattice, reps, seed,
      [&](const std::vector<std::int64_t>& p) {
        std::vector<double> v(nb, 1.0);
        if (p.empty()) return v;
        for (int i = 0; i < nb; ++i) {
          const auto c = box_counts(lattice, p, {sides[i], sides[i]});
          v[i] = static_cast<double>(std::count(c.begin(), c.end(), 0)) / lattice.sites();
        }
        return v;
      },
      degenerate);
  const double tau = lattice.tau();
  const double z_cont = lattice.z() / (tau * tau);
  const double beta_P = z_cont > 0.0 ? ddim_pressure_radial(lattice.family().c(), 2, z_cont) : 0.0;
  std::vector<HoleRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < nb; ++i) {
    std::vector<double> col(reps);
    for (int r = 0; r < reps; ++r) col[r] = y[r][i];
    const Estimate e = mean_and_error(col);
    HoleRow row;
    row.side = sides[i];
    row.area = (sides[i] * tau) * (sides[i] * tau);
    row.E = e.mean;
    row.std_error = e.std_error;
    row.beta_P = beta_P;
    row.defined = e.mean > 0.0 && e.mean < 1.0 && beta_P > 0.0;
    row.rate = e.mean > 0.0 && e.mean < 1.0 ? -std::log(e.mean) / row.area : nan;
    row.ratio = row.defined ? row.rate / beta_P : nan;
    row.insufficient = e.std_error > 0.2 * e.mean;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace circlens
