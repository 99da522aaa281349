#pragma once

// The Lipschitz symbol A and its admissibility checks: the mixed Lipschitz
// seminorm (order 1 in x1, 1/2 in x2), the flat-direction Lipschitz constant,
// the parabolic fractional derivatives with symbols sqrt(|xi1|^2 - i xi2) and
// xi2 / sqrt(|xi1|^2 - i xi2), and a dyadic-cube BMO estimator.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "paracomm/grid.hpp"

namespace paracomm {

class SymbolA {
 public:
  SymbolA() = default;
  /// Closed-form symbol; periodic = false marks symbols (like c*x1) that must
  /// not be sampled onto a torus for spectral work.
  SymbolA(std::string name, std::function<double(ParaPoint)> eval, bool periodic = true);
  /// Sampled symbol; evaluation off the lattice goes through trigonometric
  /// interpolation of the stored field.
  SymbolA(std::string name, Field2D samples);

  double operator()(const ParaPoint& p) const;
  const std::string& name() const { return name_; }
  bool periodic() const { return periodic_; }
  bool sampled() const { return interp_ != nullptr; }
  /// Samples onto a grid (throws for non-periodic symbols).
  Field2D sample_on(const TorusGrid& g) const;

 private:
  std::string name_ = "zero";
  std::function<double(ParaPoint)> eval_ = [](ParaPoint) { return 0.0; };
  bool periodic_ = true;
  std::shared_ptr<SpectralInterpolant> interp_;
};

struct SymbolParams {
  double c = 1.0;          // amplitude (linear_x1, constant)
  int k1 = 1, k2 = 1;      // mode numbers for the sine generators
  unsigned long long seed = 1;  // random_bandlimited
  int band = 3;            // random_bandlimited max |mode|
};

/// Generators: zero, constant, linear_x1, sine_x1, sine_x2, mixed,
/// random_bandlimited. Frequencies are torus-matched: sine_x1 is
/// sin(k1*pi*x1/L1), so with L1 = pi and k1 = 1 it is sin(x1).
SymbolA make_symbol(const std::string& name, const TorusGrid& g, const SymbolParams& params = {});

std::vector<std::string> symbol_generator_names();

struct ConditionReport {
  std::string name;
  double lip_half = 0.0;   // mixed Lipschitz seminorm estimate
  double sup_dx1 = 0.0;    // Lipschitz constant in the x1 direction
  double bmo_d2a = 0.0;    // BMO norm of the fractional derivative D2 A
  int n_samples = 0;
  unsigned long long seed = 0;
};

/// Lower-bound estimate of the least B with |A(x+h)-A(x)| <= B r whenever
/// |h1| <= r, |h2| <= r^2: max of the sampled ratio over x, h and r in r_set.
double lip_half_seminorm(const SymbolA& A, int n_samples, const std::vector<double>& r_set,
                         const TorusGrid& box, unsigned long long seed);

enum class FracDiff { full, partial };

MultiplierSpec frac_diff_symbol(FracDiff which);

/// Spectral fractional derivative; principal square root (Re >= 0), zero at DC.
Field2D frac_diff(const Field2D& a, FracDiff which);

/// Depth of the finest dyadic level the grid can resolve (>= 4 samples per axis).
int max_bmo_depth(const TorusGrid& g);

/// Max mean oscillation (1/|I|) sum_I |b - mean_I b| * cell over a dyadic tree
/// of parabolic cubes (plus half-shifted copies at every level), computed by
/// grid summation. Monotone nondecreasing in depth.
double bmo_parabolic(const Field2D& b, int depth);

ConditionReport check_condition(const SymbolA& A, const TorusGrid& g,
                                int n_samples = 4000, unsigned long long seed = 7);

}  // namespace paracomm
