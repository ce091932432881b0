#include "ebcm/optics.hpp"

#include <algorithm>
#include <cmath>

namespace ebcm::optics {

namespace {
constexpr cplx I{0.0, 1.0};

void check_indices(double n1, double n2) {
  if (!(n1 > 0.0 && n2 > 0.0))
    throw std::domain_error("refractive indices must be positive");
}
} // namespace

Refraction snell_refract(double theta1, double n1, double n2) {
  check_indices(n1, n2);
  if (!(theta1 >= 0.0 && theta1 <= 0.5 * kPi))
    throw std::domain_error("angle of incidence must lie in [0, pi/2]");
  const double s = n1 * std::sin(theta1) / n2;
  if (s > 1.0)
    return {0.5 * kPi, true};
  return {std::asin(s), false};
}

FresnelCoefficients fresnel_energy_coefficients(double theta1, double n1, double n2) {
  const auto refr = snell_refract(theta1, n1, n2);
  if (refr.total_internal_reflection)
    throw TotalInternalReflection("total internal reflection at this interface; model it with make_gap_unit");
  const double q1 = std::cos(theta1);
  const double q4 = std::cos(refr.theta2);
  const double root = 2.0 * std::sqrt(n1 * n2 * q1 * q4);
  const double ds = n1 * q1 + n2 * q4;
  const double dp = n1 * q4 + n2 * q1;
  return {(n1 * q1 - n2 * q4) / ds, root / ds, (n1 * q4 - n2 * q1) / dp, root / dp};
}

GapTransmittance ftir_transmittance(double w, double n, double theta) {
  if (w < 0.0)
    throw std::domain_error("gap width must be non-negative");
  if (!(n > 0.0) || !(theta >= 0.0 && theta < 0.5 * kPi))
    throw std::domain_error("invalid prism index or angle");
  const double st = n * std::sin(theta);
  if (!(st > 1.0))
    throw std::domain_error("gap unit requires an internal angle above the critical angle");
  const double k1 = 2.0 * kPi * n * std::cos(theta);
  const double kappa = 2.0 * kPi * std::sqrt(st * st - 1.0);
  const double sh = std::sinh(kappa * w);
  auto transmit = [sh](double a, double b) {
    const double g = (a * a + b * b) / (2.0 * a * b);
    return 1.0 / (1.0 + g * g * sh * sh);
  };
  return {transmit(k1, kappa), transmit(k1 / (n * n), kappa)};
}

FresnelCoefficients gap_coefficients(double w, double n, double theta) {
  const auto t = ftir_transmittance(w, n, theta);
  return {std::sqrt(1.0 - t.s), std::sqrt(t.s), std::sqrt(1.0 - t.p), std::sqrt(t.p)};
}

Matrix4 interface_matrix(const FresnelCoefficients& f) {
  Matrix4 t{};
  t[0][0] = f.r_s;
  t[0][1] = f.t_s;
  t[1][0] = f.t_s;
  t[1][1] = -f.r_s;
  t[2][2] = f.r_p;
  t[2][3] = f.t_p;
  t[3][2] = f.t_p;
  t[3][3] = -f.r_p;
  return t;
}

Matrix4 beam_splitter_matrix() {
  const double a = 1.0 / std::sqrt(2.0);
  Matrix4 t{};
  t[0][0] = a;
  t[0][1] = I * a;
  t[1][0] = I * a;
  t[1][1] = a;
  t[2][2] = a;
  t[2][3] = I * a;
  t[3][2] = I * a;
  t[3][3] = a;
  return t;
}

Matrix4 polarizing_beam_splitter_matrix() {
  Matrix4 t{};
  t[0][0] = 1.0;
  t[1][1] = 1.0;
  t[2][3] = I;
  t[3][2] = I;
  return t;
}

namespace {
template <std::size_t N>
double defect(const std::array<std::array<cplx, N>, N>& t) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < N; ++k)
        s += t[i][k] * std::conj(t[j][k]);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}
} // namespace

double unitarity_defect(const Matrix4& t) { return defect(t); }
double unitarity_defect(const Matrix2& t) { return defect(t); }

Matrix2 waveplate_matrix(Waveplate kind, double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  if (kind == Waveplate::half)
    return {{{-I * c, -I * s}, {-I * s, I * c}}};
  const double a = 1.0 / std::sqrt(2.0);
  return {{{a * (1.0 - I * c), -I * a * s}, {-I * a * s, a * (1.0 + I * c)}}};
}

Message transform(const Matrix2& t, const Message& m) {
  return {t[0][0] * m.c1 + t[0][1] * m.c2, t[1][0] * m.c1 + t[1][1] * m.c2};
}

Message waveplate_apply(Waveplate kind, double theta, const Message& m) {
  return optics::transform(waveplate_matrix(kind, theta), m);
}

Reflected mirror_apply(const Message& m, Vec2 direction, Vec2 normal) {
  const double nn = normal.norm();
  if (!(nn > 0.0))
    throw std::domain_error("mirror normal must be non-zero");
  const Vec2 u = normal * (1.0 / nn);
  return {{m.c1, -m.c2}, direction - u * (2.0 * direction.dot(u))};
}

} // namespace ebcm::optics
