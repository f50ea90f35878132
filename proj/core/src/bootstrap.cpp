#include "loam/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "loam/anova.hpp"
#include "loam/errors.hpp"
#include "loam/parallel.hpp"

namespace loam {

namespace {

std::vector<int> draw_subject_indices(Rng& rng, int a) {
  std::vector<int> indices(static_cast<std::size_t>(a));
  for (auto& ix : indices) ix = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(a)));
  return indices;
}

void gather_blocks(const MeasurementGrid& grid, const std::vector<int>& indices,
                   std::vector<double>& out) {
  const std::size_t block = static_cast<std::size_t>(grid.design().observers) *
                            static_cast<std::size_t>(grid.design().replicates);
  out.resize(indices.size() * block);
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const auto src = grid.subject_block(indices[p]);
    std::memcpy(out.data() + p * block, src.data(), block * sizeof(double));
  }
}

double limit_of(const AnovaDecomposition& anova, const Design& design, LoamKind kind, double z) {
  return kind == LoamKind::reproducibility ? reproducibility_loam(anova, design, z).limit
                                           : repeatability_loam(anova, design, z).limit;
}

// Interpolating (type 7) percentile of an ascending-sorted sample.
double percentile(const std::vector<double>& sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

PairedStudy::PairedStudy(MeasurementGrid x, MeasurementGrid y)
    : grid_x(std::move(x)), grid_y(std::move(y)) {
  if (grid_x.design() != grid_y.design()) {
    throw MismatchedDesign("the two grids have different designs");
  }
  if (grid_x.subject_labels() != grid_y.subject_labels()) {
    throw MismatchedDesign("the two grids have different subject labels");
  }
  if (grid_x.observer_labels() != grid_y.observer_labels()) {
    throw MismatchedDesign("the two grids have different observer labels");
  }
}

PairedStudy resample_subjects(const PairedStudy& study, Rng& rng) {
  const Design& design = study.grid_x.design();
  const std::vector<int> indices = draw_subject_indices(rng, design.subjects);

  std::vector<double> values_x;
  std::vector<double> values_y;
  gather_blocks(study.grid_x, indices, values_x);
  gather_blocks(study.grid_y, indices, values_y);

  // Position-tagged labels keep drawn duplicates distinct subjects.
  std::vector<std::string> subjects(indices.size());
  for (std::size_t p = 0; p < indices.size(); ++p) {
    subjects[p] = study.grid_x.subject_labels()[static_cast<std::size_t>(indices[p])] + "#" +
                  std::to_string(p + 1);
  }

  MeasurementGrid gx(design, std::move(values_x), subjects, study.grid_x.observer_labels());
  MeasurementGrid gy(design, std::move(values_y), std::move(subjects),
                     study.grid_y.observer_labels());
  return PairedStudy(std::move(gx), std::move(gy));
}

ComparisonResult bootstrap_compare(const PairedStudy& study, LoamKind kind, int n_resamples,
                                   std::uint64_t seed, double z, int threads) {
  if (n_resamples < 100) {
    throw DomainError("need at least 100 resamples, got " + std::to_string(n_resamples));
  }
  const Design& design = study.grid_x.design();

  ComparisonResult result;
  result.kind = kind;
  result.n_resamples = n_resamples;
  result.seed = seed;
  result.limit_x = limit_of(decompose(study.grid_x), design, kind, z);
  result.limit_y = limit_of(decompose(study.grid_y), design, kind, z);
  result.observed_diff = result.limit_x - result.limit_y;

  std::vector<double> boot(static_cast<std::size_t>(n_resamples));
  const int worker_count = threads > 0 ? threads : default_thread_count();
  parallel_for(boot.size(), worker_count, [&](std::size_t begin, std::size_t end, int) {
    // Scratch buffers live per worker; resamples only touch raw values,
    // never label or grid construction.
    std::vector<double> values_x;
    std::vector<double> values_y;
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng(substream_seed(seed, r));
      bool done = false;
      for (int attempt = 0; attempt < 10 && !done; ++attempt) {
        const std::vector<int> indices = draw_subject_indices(rng, design.subjects);
        gather_blocks(study.grid_x, indices, values_x);
        gather_blocks(study.grid_y, indices, values_y);
        const AnovaDecomposition ax = decompose_values(values_x, design);
        if (ax.ss_total() == 0.0) continue;
        const AnovaDecomposition ay = decompose_values(values_y, design);
        if (ay.ss_total() == 0.0) continue;
        boot[r] = limit_of(ax, design, kind, z) - limit_of(ay, design, kind, z);
        done = true;
      }
      if (!done) {
        throw DegenerateResample("resample " + std::to_string(r) +
                                 " kept producing constant data after 10 attempts");
      }
    }
  });

  double mean = 0.0;
  for (double d : boot) mean += d;
  mean /= boot.size();
  double ss = 0.0;
  for (double d : boot) ss += (d - mean) * (d - mean);
  const double sd = boot.size() > 1 ? std::sqrt(ss / (boot.size() - 1)) : 0.0;

  std::vector<double> sorted = boot;
  std::sort(sorted.begin(), sorted.end());
  result.boot_diffs.count = n_resamples;
  result.boot_diffs.mean = mean;
  result.boot_diffs.sd = sd;
  result.boot_diffs.p2_5 = percentile(sorted, 0.025);
  result.boot_diffs.p50 = percentile(sorted, 0.5);
  result.boot_diffs.p97_5 = percentile(sorted, 0.975);
  result.ci_95 = {result.boot_diffs.p2_5, result.boot_diffs.p97_5};

  // Shifted-null p-value: recenter the resample distribution at zero and
  // locate the observed difference in it. Both tails get the +1 correction
  // so ties count toward each side and a degenerate distribution (every
  // resample equal to the observation) yields p = 1, not 0.
  std::size_t at_least = 0;
  std::size_t at_most = 0;
  for (double d : boot) {
    const double centered = d - mean;
    if (centered >= result.observed_diff) ++at_least;
    if (centered <= result.observed_diff) ++at_most;
  }
  const double q_ge = (1.0 + static_cast<double>(at_least)) / (n_resamples + 1.0);
  const double q_le = (1.0 + static_cast<double>(at_most)) / (n_resamples + 1.0);
  result.p_value = std::min(1.0, 2.0 * std::min(q_ge, q_le));
  return result;
}

}  // namespace loam
