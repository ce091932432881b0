#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ebcm/optics.hpp"
#include "ebcm/random.hpp"

using namespace ebcm;
using namespace ebcm::optics;

namespace {

/// Textbook amplitude coefficients, rewritten from scratch.
struct Textbook {
  double Rs, Rp, Ts, Tp;
};

Textbook textbook(double ti, double n1, double n2) {
  const double ci = std::cos(ti);
  const double st = n1 / n2 * std::sin(ti);
  const double ct = std::sqrt(1.0 - st * st);
  const double rs = (n1 * ci - n2 * ct) / (n1 * ci + n2 * ct);
  const double rp = (n2 * ci - n1 * ct) / (n2 * ci + n1 * ct);
  const double ts = 2.0 * n1 * ci / (n1 * ci + n2 * ct);
  const double tp = 2.0 * n1 * ci / (n2 * ci + n1 * ct);
  const double flux = (n2 * ct) / (n1 * ci);
  return {rs * rs, rp * rp, flux * ts * ts, flux * tp * tp};
}

bool close(const Message& a, const Message& b, double tol = 1e-12) {
  return std::abs(a.c1 - b.c1) <= tol && std::abs(a.c2 - b.c2) <= tol;
}

} // namespace

TEST_CASE("Snell's law") {
  CHECK(snell_refract(0.0, 1.0, 1.52).theta2 == 0.0);
  const auto r = snell_refract(kPi / 6, 1.0, 1.52);
  CHECK_FALSE(r.total_internal_reflection);
  CHECK(r.theta2 * 180 / kPi == doctest::Approx(19.205).epsilon(1e-4));
  const double critical = std::asin(1.0 / 1.52);
  CHECK(snell_refract(critical + 1e-9, 1.52, 1.0).total_internal_reflection);
  CHECK_FALSE(snell_refract(critical - 1e-9, 1.52, 1.0).total_internal_reflection);
  CHECK_THROWS_AS(snell_refract(-0.1, 1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(snell_refract(0.1, 0.0, 1.5), std::domain_error);
}

TEST_CASE("Fresnel amplitudes at normal incidence") {
  const auto f = fresnel_energy_coefficients(0.0, 1.0, 1.52);
  CHECK(f.r_s == doctest::Approx(-0.52 / 2.52).epsilon(1e-12));
  CHECK(f.r_p == doctest::Approx(-0.52 / 2.52).epsilon(1e-12));
  CHECK(f.r_s * f.r_s == doctest::Approx(0.042580).epsilon(1e-5));
}

TEST_CASE("Fresnel: P reflection vanishes at the Brewster angle") {
  const auto f = fresnel_energy_coefficients(std::atan(1.52), 1.0, 1.52);
  CHECK(std::abs(f.r_p) < 1e-12);
  CHECK(std::atan(1.52) * 180 / kPi == doctest::Approx(56.66).epsilon(1e-4));
}

TEST_CASE("Fresnel: energy amplitudes match the textbook coefficients") {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const double n1 = uniform(rng, 1.0, 2.0), n2 = uniform(rng, 1.0, 3.0);
    double theta = uniform(rng, 0.0, kPi / 2 * 0.999);
    if (n1 > n2)
      theta = std::min(theta, 0.999 * std::asin(n2 / n1));
    const auto f = fresnel_energy_coefficients(theta, n1, n2);
    const auto t = textbook(theta, n1, n2);
    CHECK(f.r_s * f.r_s == doctest::Approx(t.Rs).epsilon(1e-10));
    CHECK(f.r_p * f.r_p == doctest::Approx(t.Rp).epsilon(1e-10));
    CHECK(f.t_s * f.t_s == doctest::Approx(t.Ts).epsilon(1e-10));
    CHECK(f.t_p * f.t_p == doctest::Approx(t.Tp).epsilon(1e-10));
    CHECK(std::abs(f.r_s * f.r_s + f.t_s * f.t_s - 1.0) < 1e-12);
    CHECK(std::abs(f.r_p * f.r_p + f.t_p * f.t_p - 1.0) < 1e-12);
  }
}

TEST_CASE("Fresnel: grazing incidence reflects everything") {
  const auto f = fresnel_energy_coefficients(kPi / 2, 1.0, 1.52);
  CHECK(std::abs(f.r_s) == doctest::Approx(1.0));
  CHECK(std::abs(f.r_p) == doctest::Approx(1.0));
  CHECK(f.t_s == doctest::Approx(0.0));
}

TEST_CASE("Fresnel: total internal reflection is refused") {
  CHECK_THROWS_AS(fresnel_energy_coefficients(0.75, 1.52, 1.0), TotalInternalReflection);
}

TEST_CASE("transformation matrices are unitary") {
  Rng rng(8);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = uniform(rng, 0.0, kPi / 2);
    worst = std::max(worst, unitarity_defect(interface_matrix(fresnel_energy_coefficients(theta, 1.0, 1.52))));
    worst = std::max(worst, unitarity_defect(interface_matrix(fresnel_energy_coefficients(theta, 1.0, 3.0))));
    worst = std::max(worst, unitarity_defect(interface_matrix(gap_coefficients(uniform(rng, 0, 3), 1.52, kPi / 4))));
  }
  CHECK(worst <= 1e-9);
  CHECK(unitarity_defect(beam_splitter_matrix()) <= 1e-12);
  CHECK(unitarity_defect(polarizing_beam_splitter_matrix()) <= 1e-12);
  for (int i = 0; i < 100; ++i) {
    const double theta = uniform(rng, -kPi, kPi);
    CHECK(unitarity_defect(waveplate_matrix(Waveplate::quarter, theta)) <= 1e-12);
    CHECK(unitarity_defect(waveplate_matrix(Waveplate::half, theta)) <= 1e-12);
  }
}

TEST_CASE("half-wave plate special angles") {
  const Message m{cplx(0.6, 0.1), cplx(0.2, -0.7)};
  const cplx mi(0.0, -1.0);
  CHECK(close(waveplate_apply(Waveplate::half, 0.0, m), Message{mi * m.c1, -mi * m.c2}));
  CHECK(close(waveplate_apply(Waveplate::half, kPi / 4, m), Message{mi * m.c2, mi * m.c1}));
  // A HWP at alpha/2 turns linear polarization xi into alpha - xi.
  const auto out = waveplate_apply(Waveplate::half, 0.35, Message::polarized(0.2));
  const auto expect = Message::polarized(0.7 - 0.2) * mi;
  CHECK(close(out, Message{expect.c1, expect.c2}));
}

TEST_CASE("two quarter-wave plates make a half-wave plate") {
  const Message m = Message::polarized(0.3, 0.2, -0.4);
  for (double theta : {0.0, 0.4, 1.1}) {
    const auto twice = waveplate_apply(Waveplate::quarter, theta, waveplate_apply(Waveplate::quarter, theta, m));
    const auto half = waveplate_apply(Waveplate::half, theta, m);
    // Equal up to a global phase.
    const cplx phase = twice.c1 / half.c1;
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK(std::abs(twice.c2 - phase * half.c2) < 1e-12);
  }
}

TEST_CASE("mirror") {
  const Vec2 dir{std::cos(0.3), std::sin(0.3)};
  const Vec2 normal{-1.0, 0.0};
  auto r = mirror_apply(Message{1.0, 0.0}, dir, normal);
  CHECK(close(r.msg, Message{1.0, 0.0}));
  CHECK(r.direction.x == doctest::Approx(-dir.x));
  CHECK(r.direction.y == doctest::Approx(dir.y));
  r = mirror_apply(Message{0.0, 1.0}, dir, normal);
  CHECK(close(r.msg, Message{0.0, -1.0}));
  const Message m = Message::polarized(0.8, 0.1, 0.5);
  const auto once = mirror_apply(m, dir, normal);
  const auto twice = mirror_apply(once.msg, once.direction, normal);
  CHECK(close(twice.msg, m));
  CHECK(twice.direction.x == doctest::Approx(dir.x));
  CHECK_THROWS(mirror_apply(m, dir, Vec2{0, 0}));
}

TEST_CASE("frustrated total internal reflection transmittance") {
  const auto t0 = ftir_transmittance(0.0, 1.52, kPi / 4);
  CHECK(t0.s == doctest::Approx(1.0));
  CHECK(t0.p == doctest::Approx(1.0));
  const auto far = ftir_transmittance(5.0, 1.52, kPi / 4);
  CHECK(far.s < 1e-6);
  CHECK(far.p < 1e-6);
  double prev = 1.0;
  for (double w = 0.05; w < 3.0; w += 0.05) {
    const double s = ftir_transmittance(w, 1.52, kPi / 4).s;
    CHECK(s < prev);
    prev = s;
  }
  const auto g = gap_coefficients(0.3, 1.52, kPi / 4);
  CHECK(g.r_s * g.r_s + g.t_s * g.t_s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.r_p * g.r_p + g.t_p * g.t_p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ftir_transmittance(0.5, 1.52, 0.5), std::domain_error);
  CHECK_THROWS_AS(ftir_transmittance(-0.1, 1.52, kPi / 4), std::domain_error);
}
