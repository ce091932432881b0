#include "ebcm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "ebcm/oracles.hpp"

namespace ebcm::analysis {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<CoincidenceTable> count_coincidences(std::span<const EventRecord> station1,
                                                 std::span<const EventRecord> station2, double window) {
  if (station1.size() != station2.size())
    throw std::invalid_argument("record streams must have equal length");
  if (!(window > 0.0))
    throw std::domain_error("coincidence window must be positive");
  std::map<std::pair<double, double>, CoincidenceTable> tables;
  for (std::size_t n = 0; n < station1.size(); ++n) {
    const auto& a = station1[n];
    const auto& b = station2[n];
    auto& t = tables[{a.setting, b.setting}];
    t.alpha1 = a.setting;
    t.alpha2 = b.setting;
    t.window = window;
    ++t.pairs;
    if (a.outcome == 0 || b.outcome == 0)
      continue;
    if (window - std::abs(a.time_tag - b.time_tag) < 0.0)
      continue;
    if (a.outcome > 0)
      ++(b.outcome > 0 ? t.c_pp : t.c_pm);
    else
      ++(b.outcome > 0 ? t.c_mp : t.c_mm);
  }
  std::vector<CoincidenceTable> out;
  out.reserve(tables.size());
  for (auto& [key, t] : tables)
    out.push_back(t);
  return out;
}

Averages single_particle_averages(const CoincidenceTable& t) {
  const double n = static_cast<double>(t.total());
  if (n == 0.0)
    throw std::domain_error("no coincidences for this setting pair");
  const double pp = static_cast<double>(t.c_pp), pm = static_cast<double>(t.c_pm);
  const double mp = static_cast<double>(t.c_mp), mm = static_cast<double>(t.c_mm);
  return {(pp + pm - mp - mm) / n, (pp + mp - pm - mm) / n};
}

Correlation correlation(const CoincidenceTable& t) {
  const auto avg = single_particle_averages(t);
  const double n = static_cast<double>(t.total());
  const double e12 = (static_cast<double>(t.c_pp) + static_cast<double>(t.c_mm) - static_cast<double>(t.c_pm) -
                      static_cast<double>(t.c_mp)) /
                     n;
  return {e12, e12 - avg.e1 * avg.e2};
}

double visibility(std::span<const double> curve) {
  if (curve.empty())
    throw std::domain_error("empty curve");
  const auto [lo, hi] = std::minmax_element(curve.begin(), curve.end());
  if (*hi + *lo == 0.0)
    return 0.0;
  return (*hi - *lo) / (*hi + *lo);
}

CosineFit fit_cosine(std::span<const double> xs, std::span<const double> ys, double f) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit needs at least two matching points");
  double s1 = 0, sc = 0, scc = 0, sy = 0, scy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = std::cos(2.0 * kPi * f * xs[i]);
    s1 += 1.0;
    sc += c;
    scc += c * c;
    sy += ys[i];
    scy += c * ys[i];
  }
  const double det = s1 * scc - sc * sc;
  if (std::abs(det) < 1e-12 * s1 * s1)
    throw std::domain_error("sample points do not resolve the cosine");
  const double c0 = (sy * scc - sc * scy) / det;
  const double c1 = (s1 * scy - sc * sy) / det;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - c0 - c1 * std::cos(2.0 * kPi * f * xs[i]);
    ss += r * r;
  }
  return {c0, c0 != 0.0 ? c1 / c0 : 0.0, std::sqrt(ss / static_cast<double>(xs.size()))};
}

double fit_scale(std::span<const double> ys, std::span<const double> basis) {
  if (ys.size() != basis.size() || ys.empty())
    throw std::invalid_argument("fit needs matching non-empty inputs");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    num += ys[i] * basis[i];
    den += basis[i] * basis[i];
  }
  if (den == 0.0)
    throw std::domain_error("basis is identically zero");
  return num / den;
}

OracleComparison compare_to_oracle(std::span<const double> sim, std::span<const double> oracle,
                                   std::span<const double> counts) {
  if (sim.size() != oracle.size() || (!counts.empty() && counts.size() != sim.size()))
    throw std::invalid_argument("curves must have matching lengths");
  OracleComparison c{0.0, 0.0, {}};
  c.z_scores.reserve(sim.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < sim.size(); ++i) {
    const double d = sim[i] - oracle[i];
    c.max_abs_dev = std::max(c.max_abs_dev, std::abs(d));
    ss += d * d;
    if (!counts.empty()) {
      const double n = counts[i];
      const double p = std::clamp(oracle[i], 0.0, 1.0);
      // Floor the variance at one event so p = 0 or 1 stays finite.
      const double var = std::max(p * (1.0 - p), 1.0 / n) / n;
      c.z_scores.push_back(d / std::sqrt(var));
    }
  }
  c.rms = sim.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(sim.size()));
  return c;
}

namespace {
struct SlitObjective {
  std::span<const double> theta;
  std::span<const double> counts;
  std::vector<double> model;

  // Returns the residual sum of squares with A at its optimum.
  double operator()(double a, double d, double* amp) {
    model.resize(theta.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      model[i] = oracles::two_beam_oracle(theta[i], a, d);
      num += counts[i] * model[i];
      den += model[i] * model[i];
    }
    const double A = den > 0.0 ? num / den : 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double r = counts[i] - A * model[i];
      ss += r * r;
    }
    if (amp)
      *amp = A;
    return ss;
  }
};
} // namespace

TwoSlitFit fit_two_slit(std::span<const double> theta, std::span<const double> counts, double a0, double d0) {
  if (theta.size() != counts.size() || theta.size() < 4)
    throw std::invalid_argument("fit needs matching histograms");
  if (!(a0 > 0.0 && d0 > 0.0))
    throw std::domain_error("starting widths must be positive");
  SlitObjective f{theta, counts, {}};
  double best_a = a0, best_d = d0;
  double best = f(a0, d0, nullptr);
  // Coarse scan: the separation landscape has many local minima.
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 160; ++j) {
      const double a = a0 * (0.5 + 0.05 * i);
      const double d = d0 * (0.8 + 0.0025 * j);
      const double v = f(a, d, nullptr);
      if (v < best) {
        best = v;
        best_a = a;
        best_d = d;
      }
    }
  double sa = 0.025 * a0, sd = 0.00125 * d0;
  while (sd > 1e-7 * d0) {
    bool moved = false;
    for (const auto& [da, dd] : {std::pair{sa, 0.0}, {-sa, 0.0}, {0.0, sd}, {0.0, -sd}}) {
      const double a = best_a + da, d = best_d + dd;
      if (a <= 0.0 || d <= 0.0)
        continue;
      const double v = f(a, d, nullptr);
      if (v < best) {
        best = v;
        best_a = a;
        best_d = d;
        moved = true;
      }
    }
    if (!moved) {
      sa *= 0.5;
      sd *= 0.5;
    }
  }
  double amp = 0.0;
  best = f(best_a, best_d, &amp);
  return {amp, best_a, best_d, std::sqrt(best / static_cast<double>(theta.size()))};
}

} // namespace ebcm::analysis
