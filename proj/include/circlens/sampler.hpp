#ifndef CIRCLENS_SAMPLER_HPP
#define CIRCLENS_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "circlens/model.hpp"

namespace circlens {

/// Periodic lattice of M^d sites, spacing tau = L/M on every axis, with
/// L(x, y) = g(chord(x_1 - y_1), ..., chord(x_d - y_d)).
/// z is the lattice fugacity; it matches a continuum fugacity z_c via z = z_c tau^d.
class TensorLattice {
 public:
  TensorLattice(int d, int M, double L, double z, KernelFamily family);

  int d() const { return d_; }
  int M() const { return M_; }
  double L() const { return L_; }
  double z() const { return z_; }
  double tau() const { return L_ / M_; }
  std::int64_t sites() const { return sites_; }
  const KernelFamily& family() const { return family_; }

  /// lambda_p, flat row-major over modes p in [0, M)^d (mode p and p - M coincide).
  const std::vector<double>& eigenvalues() const { return lambda_; }

  std::vector<int> unflatten(std::int64_t flat) const;
  std::int64_t flatten(const std::vector<int>& index) const;  // indices taken mod M

 private:
  int d_, M_;
  double L_, z_;
  KernelFamily family_;
  std::int64_t sites_;
  std::vector<double> lambda_;
};

/// k_p = z lambda_p / (1 + z lambda_p), same ordering as eigenvalues().
std::vector<double> bernoulli_probabilities(const TensorLattice& lattice);

struct PointSample {
  std::vector<std::int64_t> flat;        // sorted
  std::vector<std::vector<int>> sites;   // multi-indices in the same order
};

struct SampleStats {
  std::int64_t degenerate_pivots = 0;  // points re-drawn after a pivot norm below 1e-12
};

/// One exact draw; replicate selects the generator stream.
PointSample sample(const TensorLattice& lattice, std::uint64_t seed, std::uint64_t replicate = 0,
                   SampleStats* stats = nullptr);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct DensityEstimate {
  std::vector<double> per_site;         // occupation frequency of each site
  std::vector<double> per_site_stderr;  // binomial
  Estimate site_average;                // |sample| / M^d
  Estimate cardinality;                 // |sample|
  double cardinality_variance = 0.0;    // unbiased sample variance
  double cardinality_variance_stderr = 0.0;
  std::int64_t degenerate_pivots = 0;
};

struct TwoPointEstimate {
  Estimate origin;    // site 0 and site sep both occupied, binomial stderr
  Estimate averaged;  // averaged over translates, stderr across replicates
  std::int64_t degenerate_pivots = 0;
};

DensityEstimate estimate_density(const TensorLattice& lattice, int reps, std::uint64_t seed);
TwoPointEstimate estimate_two_point(const TensorLattice& lattice, const std::vector<int>& separation, int reps,
                                    std::uint64_t seed);
/// E(0; block) for a box of block[i] sites along axis i, averaged over translates.
Estimate estimate_gap(const TensorLattice& lattice, const std::vector<int>& block, int reps, std::uint64_t seed);

struct HoleRow {
  int side = 0;           // block side in sites
  double area = 0.0;      // (side tau)^2
  double E = 0.0;         // estimated E(0; block)
  double std_error = 0.0;
  double rate = 0.0;      // -log E / area, NaN when E = 0 or 1
  double beta_P = 0.0;    // continuum pressure at z / tau^2
  double ratio = 0.0;     // rate / beta_P, NaN when undefined
  bool defined = false;
  bool insufficient = false;  // stderr > 20% of E
};

/// d = 2 Gaussian lattice with tau <= 1/8; one set of draws serves every block side.
std::vector<HoleRow> hole_probability_check(const TensorLattice& lattice, const std::vector<int>& sides, int reps,
                                            std::uint64_t seed);

}  // namespace circlens

#endif  // CIRCLENS_SAMPLER_HPP
