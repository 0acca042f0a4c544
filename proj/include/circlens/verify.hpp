#ifndef CIRCLENS_VERIFY_HPP
#define CIRCLENS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "circlens/model.hpp"

namespace circlens {

struct ReportEntry {
  std::string id;
  double error = 0.0;
  double tol = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string status = "ok";  // "ok", "unknown check", or the exception text
};

struct VerificationReport {
  int version = 1;
  std::uint64_t seed = 0;
  std::vector<ReportEntry> entries;  // sorted by id
  bool pass = true;                  // conjunction of entries
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  bool strict = false;  // every tolerance divided by 10
};

// Sum rule in the thermodynamic regime: rho - int w^2 ds against
// (z d/dz)^2 beta P from int w (1 - w) ds and from finite differences of the
// pressure in log z. error = largest pairwise relative difference.
ReportEntry check_compressibility_continuum(const KernelFamily& family, double z, double tol = 1e-6);
// Lattice version: sum over separations of rho2 - rho^2, plus rho, against
// (z d/dz)^2 of tau beta P.
ReportEntry check_compressibility_lattice(const KernelFamily& family, double tau, double z, double tol = 1e-5);
// Same sum on the finite ring against the lattice limit.
ReportEntry check_compressibility_finite_M(const KernelFamily& family, int M, double z, double tol = 1e-4);
// Local exponent of rho2(0, r) = rho^2 - |K(r)|^2 at r -> 0, Richardson
// extrapolated from r = 0.04, 0.02, 0.01. error = |exponent - 2|.
ReportEntry check_quadratic_vanishing(const KernelFamily& family, double z, double tol = 0.05);
ReportEntry check_quadratic_vanishing_fermion(double beta, double mu, double tol = 0.05);
// rho2(0, r) against z^2 (g(0)^2 - g(r)^2) for RealEven families, z <= 1e-2.
ReportEntry check_small_z_two_point(const KernelFamily& family, double z, double r, double tol = 1e-3);

/// Check ids, sorted. Group ids (e.g. "LIMIT-CONSISTENCY") expand to their
/// sub-entries ("LIMIT-CONSISTENCY/lattice", ...).
std::vector<std::string> suite_groups();

/// names: group ids, full entry ids, or "all". Unknown names give a failing
/// entry with status "unknown check". Failures never abort the suite.
VerificationReport run_suite(const std::vector<std::string>& names, const SuiteOptions& options = {});

std::string report_to_json(const VerificationReport& report);

/// Identity -> check groups that exercise it.
struct CoverageItem {
  std::string identity;
  std::vector<std::string> checks;
};
const std::vector<CoverageItem>& coverage_manifest();

}  // namespace circlens

#endif  // CIRCLENS_VERIFY_HPP
