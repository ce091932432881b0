#pragma once
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ebcm/records.hpp"

namespace ebcm::analysis {

inline constexpr double kNoWindow = std::numeric_limits<double>::infinity();

struct CoincidenceTable {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::uint64_t c_pp = 0;
  std::uint64_t c_pm = 0;
  std::uint64_t c_mp = 0;
  std::uint64_t c_mm = 0;
  std::uint64_t pairs = 0; ///< pairs recorded with this setting, windowed or not
  double window = kNoWindow;

  std::uint64_t total() const noexcept { return c_pp + c_pm + c_mp + c_mm; }
};

/// Pairs records by position. A pair counts when W - |t1 - t2| >= 0.
/// Tables come back sorted by (alpha1, alpha2).
std::vector<CoincidenceTable> count_coincidences(std::span<const EventRecord> station1,
                                                 std::span<const EventRecord> station2, double window);

struct Averages {
  double e1;
  double e2;
};

struct Correlation {
  double e12;
  double rho12;
};

/// Both throw std::domain_error on an empty table.
Averages single_particle_averages(const CoincidenceTable& t);
Correlation correlation(const CoincidenceTable& t);

/// (max - min) / (max + min); 0 for an all-zero curve.
double visibility(std::span<const double> curve);

struct CosineFit {
  double a;
  double b;
  double rms;
};

/// Least squares of a (1 + b cos(2 pi f x)).
CosineFit fit_cosine(std::span<const double> xs, std::span<const double> ys, double f = 1.0);

/// Least-squares factor A in ys ~ A * basis.
double fit_scale(std::span<const double> ys, std::span<const double> basis);

struct OracleComparison {
  double max_abs_dev;
  double rms;
  std::vector<double> z_scores;
};

/// Deviations of simulated fractions from predicted probabilities; z-scores
/// use binomial errors with the per-point event counts.
OracleComparison compare_to_oracle(std::span<const double> sim, std::span<const double> oracle,
                                   std::span<const double> counts);

struct TwoSlitFit {
  double amplitude;
  double width;
  double separation;
  double rms;
};

/// Fit A sinc^2(pi a sin t) cos^2(pi d sin t) to a histogram, starting near (a0, d0).
TwoSlitFit fit_two_slit(std::span<const double> theta, std::span<const double> counts, double a0, double d0);

} // namespace ebcm::analysis
