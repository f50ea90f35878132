#include "loam/simulate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "loam/errors.hpp"
#include "loam/quantiles.hpp"
#include "loam/rng.hpp"

namespace loam {

namespace {

void check_params(const ModelParams& p) {
  for (double s : {p.sigma_a, p.sigma_b, p.sigma_ab, p.sigma_e}) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw DomainError("effect standard deviations must be finite and nonnegative");
    }
  }
  if (!(p.sigma_e > 0.0)) throw DomainError("sigma_e must be positive");
  if (!std::isfinite(p.mu)) throw DomainError("mu must be finite");
}

double normal_draw(Rng& rng, double sigma) {
  // Inverse-CDF sampling keeps the stream layout portable: one uniform per
  // draw, consumed even when sigma is zero so the draw order never shifts.
  const double u = rng.uniform();
  return sigma == 0.0 ? 0.0 : sigma * normal_quantile(u);
}

}  // namespace

MeasurementGrid simulate(const ModelParams& params, const Design& design, std::uint64_t seed) {
  check_params(params);
  design.validate();
  const int a = design.subjects;
  const int b = design.observers;
  const int c = design.replicates;

  Rng rng(seed);
  std::vector<double> ai(a);
  std::vector<double> bj(b);
  std::vector<double> abij(static_cast<std::size_t>(a) * b);
  for (int i = 0; i < a; ++i) ai[i] = normal_draw(rng, params.sigma_a);
  for (int j = 0; j < b; ++j) bj[j] = normal_draw(rng, params.sigma_b);
  for (auto& x : abij) x = normal_draw(rng, params.sigma_ab);

  std::vector<double> values(static_cast<std::size_t>(design.total()));
  std::size_t idx = 0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double cell = params.mu + ai[i] + bj[j] + abij[static_cast<std::size_t>(i) * b + j];
      for (int k = 0; k < c; ++k) {
        values[idx++] = cell + normal_draw(rng, params.sigma_e);
      }
    }
  }

  std::vector<std::string> subjects(a);
  std::vector<std::string> observers(b);
  for (int i = 0; i < a; ++i) subjects[i] = "S" + std::to_string(i + 1);
  for (int j = 0; j < b; ++j) observers[j] = "O" + std::to_string(j + 1);
  return MeasurementGrid(design, std::move(values), std::move(subjects), std::move(observers));
}

TrueLoam true_loam(const ModelParams& params, const Design& design, double z) {
  check_params(params);
  design.validate();
  const double b = design.observers;
  const double c = design.replicates;
  const double var_b = params.sigma_b * params.sigma_b;
  const double var_ab = params.sigma_ab * params.sigma_ab;
  const double var_e = params.sigma_e * params.sigma_e;

  TrueLoam t;
  t.reproducibility_limit =
      z * std::sqrt((b - 1.0) / b * (var_b + var_ab) + (b * c - 1.0) / (b * c) * var_e);
  t.repeatability_limit = z * std::sqrt((c - 1.0) / c * var_e);
  return t;
}

double empirical_variance_check(const ModelParams& params, const Design& design,
                                DifferenceKind which, int n_sims, std::uint64_t seed) {
  if (n_sims < 1) throw DomainError("n_sims must be positive");
  // Differences within one simulation are correlated, so the variance is
  // pooled per simulation (each difference has mean zero by construction)
  // and averaged across independent simulations.
  long double pooled = 0.0L;
  std::size_t count = 0;
  for (int s = 0; s < n_sims; ++s) {
    const MeasurementGrid grid = simulate(params, design, substream_seed(seed, s));
    const DifferenceSeries series = difference_series(grid, which);
    for (const DifferenceEntry& e : series.differences) {
      pooled += static_cast<long double>(e.difference) * e.difference;
      ++count;
    }
  }
  return static_cast<double>(pooled / count);
}

}  // namespace loam
