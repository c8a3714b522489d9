#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spintriad/tensor.hpp"

namespace spintriad {

/// ||Q|| of the product state (a|00> + b|S> + c e^{i phi}|11>) (x) |0>.
double q_norm_product(double a, double b, double c, double phi);

/// Maximum of q_norm_product over the phase; coincides with it at phi = 0
/// when a, c >= 0.
double q_norm_product_max(double a, double b, double c);

/// Radical part of the phase-maximized norm in reduced coordinates
/// (x, y) = (a^2 + c^2, a^2 - c^2), so that
/// q_norm_product_max = 15 a^2 + 10 b^2 + 5 c^2 + q_norm_surplus(x, y).
/// Domain: 0 <= x <= 1, -x <= y <= x.
double q_norm_surplus(double x, double y);

/// Closed form of q_map on the same product state as a 2x2 operator.
Operator q_map_product(double a, double b, double c, double phi);

/// Overlap tr(P3 |Psi><Psi|) of the product state with the symmetric subspace.
double sym_overlap_product(double a, double b, double c);

/// Excess over 20 of the two-outcome norm sum when the pair state is in
/// canonical form with angle xi and the single-copy measurement is projective
/// with polar angle theta (azimuth 0).
double pair_norm_excess(double xi, double theta);

/// Full two-angle norm sum (including the offset 20) with azimuth phi; its
/// maximum over phi is attained at phi = 0.
double pair_norm_sum_full(double xi, double theta, double phi);

/// Exact constants of the tangent-line bound on q_norm_surplus and the zeros
/// of the scalar functions that locate its saturation points.
struct BoundConstants {
  double p;
  double x0, y0;
  double alpha, beta, gamma;
  double u0, u_plus, u_minus;
  double zeta_star, zeta0, zeta_plus;
};
BoundConstants bound_constants();

// Scalar functions underlying the zeros above, exposed for verification.
double zero_locator_l(double zeta);   // l(zeta); unique zero at zeta_star
double zero_locator_h(double zeta);   // h(zeta); zeros at zeta_plus and zeta0

/// Which inequality to scan: the constant-slope bound on q_norm_surplus (A2),
/// the projective-pair bound (B2), or the tangent-line bound (C1).
enum class BoundLemma { A2, B2, C1 };

std::string bound_lemma_name(BoundLemma lemma);
BoundLemma bound_lemma_from_name(const std::string& name);

struct BoundReport {
  std::string lemma;
  double max_violation = 0.0;
  std::vector<std::array<double, 2>> saturation_points;
  long long grid = 0;
  long long randoms = 0;
  uint64_t seed = 0;
};

/// Scan the stated domain on a grid of `grid` points per axis plus `randoms`
/// random samples; report the worst violation and the located saturation
/// points (grid candidates polished by local box refinement).
BoundReport verify_bound(BoundLemma lemma, long long grid, long long randoms, uint64_t seed);

}  // namespace spintriad
