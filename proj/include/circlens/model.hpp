#ifndef CIRCLENS_MODEL_HPP
#define CIRCLENS_MODEL_HPP

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>

namespace circlens {

enum class FamilyKind { RealEven, ComplexOdd, RealEvenD };
enum class Builtin { None, Gaussian, GaussianD, InverseArgument };

/// The entry function of the L-matrix / L-operator.
///
/// RealEven: L(x, y) = g(chord(x - y)) with g real and even.
/// ComplexOdd: L(x, y) = i h(chord(x - y + 2 i eps)) with h odd.
/// RealEvenD: g of a d-vector, used on tensor lattices.
///
/// User callables come with a decay radius R beyond which |g| < 1e-18.
class KernelFamily {
 public:
  using RealFn = std::function<double(double)>;
  using ComplexFn = std::function<std::complex<double>(double)>;
  using VectorFn = std::function<double(std::span<const double>)>;

  static KernelFamily gaussian(double c);
  static KernelFamily gaussian_d(double c, int d);
  static KernelFamily inverse_argument(double eps);
  static KernelFamily real_even(RealFn g, double decay_radius);
  static KernelFamily complex_odd(ComplexFn h, double eps);
  static KernelFamily real_even_d(VectorFn g, int d, double decay_radius);

  FamilyKind kind() const { return kind_; }
  Builtin builtin() const { return builtin_; }
  bool is_gaussian() const { return builtin_ == Builtin::Gaussian || builtin_ == Builtin::GaussianD; }
  int dimension() const { return d_; }
  double c() const { return c_; }      // Gaussian width parameter
  double eps() const { return eps_; }  // ComplexOdd regularizer
  double decay_radius() const { return radius_; }

  double g(double u) const;                      // RealEven
  double g(std::span<const double> u) const;     // RealEvenD (and RealEven with d = 1)
  std::complex<double> h(double u) const;        // ComplexOdd

  std::string describe() const;

 private:
  KernelFamily() = default;

  FamilyKind kind_ = FamilyKind::RealEven;
  Builtin builtin_ = Builtin::None;
  int d_ = 1;
  double c_ = 0.0;
  double eps_ = 0.0;
  double radius_ = 0.0;
  RealFn g1_;
  ComplexFn h_;
  VectorFn gd_;
};

/// Radius beyond which c^{-d/2} e^{-pi u^2/c} < 1e-18.
double gaussian_decay_radius(double c, int d = 1);

/// Finite system of M sites on a circle of circumference L at fugacity z.
/// ComplexOdd families are continuum only and carry M = 0.
class CirculantEnsemble {
 public:
  CirculantEnsemble(int M, double L, double z, KernelFamily family);
  static CirculantEnsemble continuum(double L, double z, KernelFamily family);

  int M() const { return M_; }
  double L() const { return L_; }
  double z() const { return z_; }
  double tau() const { return L_ / M_; }
  const KernelFamily& family() const { return family_; }
  bool is_continuum() const { return M_ == 0; }

  CirculantEnsemble with_z(double z) const;

 private:
  CirculantEnsemble(double L, double z, KernelFamily family);
  int M_;
  double L_;
  double z_;
  KernelFamily family_;
};

struct FermionParams {
  double beta;
  double mu;
};

struct GasParams {
  double c;
  double z;
};

/// c = 4 pi beta, z = e^{beta mu}.
GasParams fermion_to_gas(const FermionParams& p);
FermionParams gas_to_fermion(const GasParams& g);

/// Lowest mode index floor(-M/2) + 1; modes run p0 .. floor(M/2).
int first_mode(int M);
int last_mode(int M);

/// (L/pi) sin(pi s / M): chord length between sites s apart.
double chord(int s, int M, double L);

/// sum_{s = p0}^{floor(M/2)} g(chord(s)) zeta^s.
std::complex<double> generating_function(const KernelFamily& family, int M, double L,
                                         std::complex<double> zeta);

}  // namespace circlens

#endif  // CIRCLENS_MODEL_HPP
