#pragma once

#include <cstdint>

#include "loam/estimators.hpp"
#include "loam/grid.hpp"

namespace loam {

/// Parameters of the generating model
///   Y_ijk = mu + A_i + B_j + AB_ij + E_ijk
/// with independent centered normal effects whose standard deviations are
/// given here. sigma_e must be positive; the others may be zero.
struct ModelParams {
  double mu = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double sigma_ab = 0.0;
  double sigma_e = 1.0;
};

/// Population agreement limits implied by ModelParams and a Design.
struct TrueLoam {
  double reproducibility_limit = 0.0;
  double repeatability_limit = 0.0;
};

/// Draws one balanced dataset from the model. Deterministic given the
/// seed: effects are drawn from a single stream in the documented order
/// A_1..A_a, B_1..B_b, AB row-major, E row-major with replicate fastest,
/// each via the inverse normal CDF applied to the stream's uniforms.
/// Subjects are labeled "S1".."Sa" and observers "O1".."Ob".
MeasurementGrid simulate(const ModelParams& params, const Design& design, std::uint64_t seed);

/// Closed-form limits:
///   reproducibility = z * sqrt(((b-1)/b)(sigma_b^2 + sigma_ab^2) + ((bc-1)/(bc)) sigma_e^2)
///   repeatability   = z * sqrt(((c-1)/c) sigma_e^2)
TrueLoam true_loam(const ModelParams& params, const Design& design, double z = 1.96);

/// Pooled empirical variance of per-datum differences (to the subject mean
/// or to the cell mean) across n_sims fresh simulations. Exists to verify
/// the closed-form radicands against the generator.
double empirical_variance_check(const ModelParams& params, const Design& design,
                                DifferenceKind which, int n_sims, std::uint64_t seed);

}  // namespace loam
