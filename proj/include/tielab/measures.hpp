#pragma once

#include <cstdint>
#include <vector>

#include "tielab/distribution.hpp"
#include "tielab/partition.hpp"
#include "tielab/tie.hpp"

namespace tielab {

enum class MeasureKind { plancherel, geometric };

// Parameters of the boundary-weighted up/down measures on partitions.
// The two boundary slots pair as (u, a1, b1) with mu and (v, a2, b2) with
// the second partition (nu for up-down, lambda itself for upwards).
struct MeasureSpec {
  TieVariant variant = TieVariant::updown;
  MeasureKind kind = MeasureKind::geometric;
  BoundaryLabel label = BoundaryLabel::none;
  double u = 0.0;
  double v = 0.0;          // forced to 1 for the upwards variant
  double eps = 1.0;        // rate of the factorial-kind skew weight
  double q = 0.5;          // base of the bounded-row kind
  int n = 1;               // row bound of the bounded-row kind
  double a1 = 1.0, a2 = 1.0, b1 = 1.0, b2 = 1.0;
  double t = 1.0;          // shift-law parameter

  void validate() const;
  double uv() const { return variant == TieVariant::upwards ? u : u * v; }
};

// The marker factor Delta^x(mu, second): products of a^(odd columns) and
// b^(odd rows) according to the label; 1 for label none.
double boundary_weight(BoundaryLabel label, const Partition& mu, const Partition& second,
                       double a1, double a2, double b1, double b2);

// Exact unnormalized weight of one configuration; 0 unless containments hold.
double unnormalized_weight(const MeasureSpec& spec, const Partition& mu, const Partition& lambda);
double unnormalized_weight(const MeasureSpec& spec, const Partition& mu, const Partition& lambda,
                           const Partition& nu);

// Total unnormalized mass of one lambda (all mu, and nu where applicable,
// summed out).  Exact; used by the shell enumeration.
double lambda_marginal_weight(const MeasureSpec& spec, const Partition& lambda);

// Sum of lambda_marginal_weight over the weight-w shell.  Deterministic
// reduction order for any thread count.
double shell_sum_exact(const MeasureSpec& spec, int w, int threads = 1);

// Row-factorized upper bound E(w) >= shell_sum_exact(w) for w = 0..w_max,
// computed by dynamic programming without enumerating the shell.
std::vector<double> shell_envelope(const MeasureSpec& spec, int w_max);

// Prob(lambda1 <= k) for k = 0..cap by exact enumeration of all shells
// |lambda| <= cap, normalized including a certified bound on the omitted
// mass.  cap <= 0 picks the cap adaptively.  Throws DiagnosticError when the
// relative tail cannot be certified below tol_tail.
DistributionTable lambda1_cdf_exact(const MeasureSpec& spec, int cap = 0, double tol_tail = 1e-6,
                                    int threads = 0);

// Law of the integer shift D: Prob(d) proportional to t^(2d) (uv)^(2 d^2).
struct ThetaShiftLaw {
  double t = 1.0;
  double uv = 0.0;
  int dmax = 0;
  std::vector<double> pmf;  // index d + dmax

  double prob(int d) const {
    return (d < -dmax || d > dmax) ? 0.0 : pmf[static_cast<std::size_t>(d + dmax)];
  }
};

ThetaShiftLaw theta_shift(double t, double uv);
ThetaShiftLaw theta_shift(const MeasureSpec& spec);

// Law of lambda1 + 2 D from the law of lambda1, and its inverse (least
// squares on the lattice, for shift-invariance checks).
DistributionTable convolve_shift(const DistributionTable& table, const ThetaShiftLaw& law);
DistributionTable deconvolve_shift(const DistributionTable& shifted, const ThetaShiftLaw& law);

}  // namespace tielab
