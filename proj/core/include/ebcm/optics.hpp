#pragma once
#include <array>
#include <stdexcept>

#include "ebcm/message.hpp"

namespace ebcm::optics {

using Matrix2 = std::array<std::array<cplx, 2>, 2>;
/// Acts on (port0.c1, port1.c1, port0.c2, port1.c2).
using Matrix4 = std::array<std::array<cplx, 4>, 4>;

struct Refraction {
  double theta2 = 0.0;
  bool total_internal_reflection = false;
};

/// n1 sin(theta1) = n2 sin(theta2). Accepts 0 <= theta1 <= pi/2.
Refraction snell_refract(double theta1, double n1, double n2);

/// Energy-current amplitudes; r^2 + t^2 = 1 for each polarization.
struct FresnelCoefficients {
  double r_s = 0.0;
  double t_s = 1.0;
  double r_p = 0.0;
  double t_p = 1.0;
};

class TotalInternalReflection : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Throws TotalInternalReflection above the critical angle; use the gap unit there.
FresnelCoefficients fresnel_energy_coefficients(double theta1, double n1, double n2);

struct GapTransmittance {
  double s = 1.0;
  double p = 1.0;
};

/// Frustrated total internal reflection across a vacuum gap of width w between
/// two half-spaces of index n, at internal angle theta above critical.
GapTransmittance ftir_transmittance(double w, double n, double theta);

FresnelCoefficients gap_coefficients(double w, double n, double theta);

Matrix4 interface_matrix(const FresnelCoefficients& f);
Matrix4 beam_splitter_matrix();
Matrix4 polarizing_beam_splitter_matrix();

/// max |(T T^dagger - 1)_ij|
double unitarity_defect(const Matrix4& t);
double unitarity_defect(const Matrix2& t);

enum class Waveplate { half, quarter };

Matrix2 waveplate_matrix(Waveplate kind, double theta);
Message transform(const Matrix2& t, const Message& m);
Message waveplate_apply(Waveplate kind, double theta, const Message& m);

struct Reflected {
  Message msg;
  Vec2 direction;
};

/// Ideal mirror with unit normal `normal`: specular bounce, c2 changes sign.
Reflected mirror_apply(const Message& m, Vec2 direction, Vec2 normal);

} // namespace ebcm::optics
