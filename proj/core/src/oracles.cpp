#include "ebcm/oracles.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ebcm::oracles {

namespace {
using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
constexpr cd I{0.0, 1.0};

double sq(double v) { return v * v; }

double mix(double xi, double s, double p) { return sq(std::cos(xi)) * s + sq(std::sin(xi)) * p; }
} // namespace

TwoChannel mzi_oracle(double phi0, double phi1) {
  const double h = 0.5 * (phi0 - phi1);
  return {sq(std::sin(h)), sq(std::cos(h))};
}

TwoChannel mzi_matrix_oracle(double phi0, double phi1) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<std::array<cd, 2>, 2> a{{{r, I * r}, {I * r, r}}};
  const std::array<cd, 2> b{std::exp(I * phi0), std::exp(I * phi1)};
  std::array<double, 2> p{};
  for (int k = 0; k < 2; ++k) {
    cd amp = 0.0;
    for (int j = 0; j < 2; ++j)
      amp += a[k][j] * b[j] * a[j][0];
    p[k] = std::norm(amp);
  }
  return {p[0], p[1]};
}

double wheeler_oracle(double xi, double eom_angle, double phase) {
  // Jones vectors (S, P). The first PBS sends S to arm 0 and P to arm 1 with a
  // factor i; the second merges them with another factor i on P.
  const cd s = std::cos(xi) * std::exp(I * phase);
  const cd p = I * I * std::sin(xi);
  const double c2 = std::cos(2.0 * eom_angle), s2 = std::sin(2.0 * eom_angle);
  // S row of the half-wave plate; the analyzer passes S to D0.
  return std::norm(-I * (c2 * s + s2 * p));
}

double plate_oracle(double theta, double n1, double n2, double n3, double thickness, double xi) {
  if (!(n1 > 0.0 && n2 > 0.0 && n3 > 0.0) || thickness < 0.0)
    throw std::domain_error("invalid film parameters");
  // Airy summation of the two interface amplitudes:
  //   r = (r12 + r23 e^{2i beta}) / (1 + r12 r23 e^{2i beta}),
  //   beta = 2 pi (n2 h) cos theta2, complex cosines handle evanescent layers.
  const double s1 = std::sin(theta);
  const cd c1 = std::cos(theta);
  const cd c2 = std::sqrt(cd(1.0 - sq(n1 * s1 / n2), 0.0));
  const cd c3 = std::sqrt(cd(1.0 - sq(n1 * s1 / n3), 0.0));
  auto rs = [](double na, cd ca, double nb, cd cb) { return (na * ca - nb * cb) / (na * ca + nb * cb); };
  auto rp = [](double na, cd ca, double nb, cd cb) { return (nb * ca - na * cb) / (nb * ca + na * cb); };
  const cd phase = std::exp(2.0 * I * (2.0 * kPi * thickness * c2));
  auto airy = [&](cd r12, cd r23) { return std::norm((r12 + r23 * phase) / (1.0 + r12 * r23 * phase)); };
  const double R_s = airy(rs(n1, c1, n2, c2), rs(n2, c2, n3, c3));
  const double R_p = airy(rp(n1, c1, n2, c2), rp(n2, c2, n3, c3));
  return mix(xi, R_s, R_p);
}

double two_beam_oracle(double theta, double a, double d) {
  const double s = std::sin(theta);
  const double u = kPi * a * s;
  const double env = u == 0.0 ? 1.0 : sq(std::sin(u) / u);
  return env * sq(std::cos(kPi * d * s));
}

namespace {
struct EraserTerms {
  double constant;
  double oscillating;
  double sine_bracket;
};

EraserTerms eraser_terms(double t0, double t1, double t2, double phase) {
  return {std::cos(4.0 * (t2 - t1)) + std::cos(4.0 * (t2 - t1 - t0)) + std::cos(4.0 * (t1 - t0)),
          4.0 * std::cos(phase) * std::sin(2.0 * t2 - 4.0 * t1) * std::sin(2.0 * t0),
          std::cos(4.0 * t2 - 4.0 * t1 - 2.0 * t0) + std::cos(4.0 * t1 - 2.0 * t0)};
}
} // namespace

TwoChannel eraser_oracle(double theta0, double theta1, double theta2, double phase) {
  const auto e = eraser_terms(theta0, theta1, theta2, phase);
  const double c0 = 2.0 * std::cos(2.0 * theta0);
  const double sp = 2.0 * std::sin(phase);
  const double i0 = (4.0 - e.constant - std::cos(4.0 * theta1) + e.oscillating - sp * (e.sine_bracket - c0)) / 16.0;
  const double i1 = (4.0 + e.constant + std::cos(4.0 * theta1) - e.oscillating + sp * (e.sine_bracket + c0)) / 16.0;
  return {i0, i1};
}

TwoChannel eraser_oracle_printed(double theta0, double theta1, double theta2, double phase) {
  const auto e = eraser_terms(theta0, theta1, theta2, phase);
  const double c0 = 2.0 * std::cos(2.0 * theta0);
  const double sp = 2.0 * std::sin(phase);
  const double i0 = (4.0 - e.constant - std::cos(4.0 * theta1) + e.oscillating - sp * (e.sine_bracket - c0)) / 16.0;
  const double i1 = (4.0 + e.constant + std::cos(4.0 * theta2) - e.oscillating + sp * (e.sine_bracket + c0)) / 16.0;
  return {i0, i1};
}

Correlations eprb_oracle(PairState state, double alpha1, double alpha2, double eta1, double eta2) {
  if (state == PairState::singlet) {
    const double e = -std::cos(2.0 * (alpha1 - alpha2));
    return {0.0, 0.0, e, e};
  }
  const double e1 = std::cos(2.0 * (alpha1 - eta1));
  const double e2 = std::cos(2.0 * (alpha2 - eta2));
  return {e1, e2, e1 * e2, 0.0};
}

HbtPrediction hbt_oracle(double f_dt, double n_tot) {
  const double base = n_tot / 8.0;
  const double hi = base * 1.5;
  const double lo = base * 0.5;
  return {n_tot / 2.0, base * (1.0 + 0.5 * std::cos(2.0 * kPi * f_dt)), (hi - lo) / (hi + lo)};
}

double ftir_oracle(double w, double n, double theta, double xi) {
  if (w < 0.0 || !(n > 0.0))
    throw std::domain_error("invalid gap parameters");
  // Characteristic matrix of the gap layer (index 1) between two media of
  // index n; T = 4 eta^2 / |eta B + C|^2 with [B, C] = M [1, eta].
  const double s = n * std::sin(theta);
  const cd cg = std::sqrt(cd(1.0 - s * s, 0.0));
  const double cp = std::cos(theta);
  const cd delta = 2.0 * kPi * w * cg;
  auto transmit = [&](cd eta_out, cd eta_gap) {
    const cd m11 = std::cos(delta);
    const cd m12 = I * std::sin(delta) / eta_gap;
    const cd m21 = I * eta_gap * std::sin(delta);
    const cd b = m11 + m12 * eta_out;
    const cd c = m21 + m11 * eta_out;
    return std::real(4.0 * eta_out * eta_out / std::norm(eta_out * b + c));
  };
  const double T_s = transmit(n * cp, cg);
  const double T_p = transmit(n / cp, 1.0 / cg);
  return mix(xi, T_s, T_p);
}

double fresnel_oracle(double theta, double n1, double n2, double xi) {
  if (!(n1 > 0.0 && n2 > 0.0) || !(theta >= 0.0 && theta <= 0.5 * kPi))
    throw std::domain_error("invalid interface parameters");
  const double s2 = n1 * std::sin(theta) / n2;
  if (s2 > 1.0)
    throw std::domain_error("total internal reflection");
  const double ci = std::cos(theta);
  const double ct = std::sqrt(1.0 - s2 * s2);
  const double rs = (n1 * ci - n2 * ct) / (n1 * ci + n2 * ct);
  const double rp = (n1 * ct - n2 * ci) / (n1 * ct + n2 * ci);
  return mix(xi, rs * rs, rp * rp);
}

} // namespace ebcm::oracles
