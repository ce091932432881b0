#pragma once
#include <map>
#include <string>
#include <vector>

namespace ebcm::oracles {

/// A predicted curve, exportable with the same layout as simulation output.
struct OracleCurve {
  std::string experiment;
  std::string sweep_name;
  std::vector<double> sweep;
  std::vector<std::string> channels;
  std::vector<std::vector<double>> values; ///< values[channel][point]
  std::map<std::string, double> parameters;
};

struct TwoChannel {
  double p0;
  double p1;
};

/// P0 = sin^2((phi0-phi1)/2), P1 = cos^2((phi0-phi1)/2).
TwoChannel mzi_oracle(double phi0, double phi1);

/// Same probabilities from the explicit product A B A acting on (1, 0).
TwoChannel mzi_matrix_oracle(double phi0, double phi1);

/// Reflectance of a film of index n2 and optical thickness n2*h (units c/f)
/// between n1 and n3. xi mixes S (cos^2) and P (sin^2) reflectances.
double plate_oracle(double theta, double n1, double n2, double n3, double thickness, double xi);

/// D0 probability of the delayed-choice network: PBS, two arms with phase
/// difference `phase`, recombining PBS, half-wave plate at `eom_angle`,
/// analyzer. eom_angle = 0 leaves no interference.
double wheeler_oracle(double xi, double eom_angle, double phase);

/// sinc^2(pi a sin theta) cos^2(pi d sin theta), f = c = 1.
double two_beam_oracle(double theta, double a, double d);

/// Detector intensities for an S-polarized input. `phase` is the arm phase
/// difference in radians. I1 carries the corrected cos 4 theta1 term so that
/// I0 + I1 equals the light leaving the analysis port.
TwoChannel eraser_oracle(double theta0, double theta1, double theta2, double phase);

/// Commonly quoted variant with +cos 4 theta2 in I1. Kept for the residual check.
TwoChannel eraser_oracle_printed(double theta0, double theta1, double theta2, double phase);

enum class PairState { singlet, product };

struct Correlations {
  double e1;
  double e2;
  double e12;
  double rho12;
};

Correlations eprb_oracle(PairState state, double alpha1, double alpha2, double eta1 = 0.0, double eta2 = 1.5707963267948966);

struct HbtPrediction {
  double singles;     ///< mean counts per detector
  double coincidences;
  double visibility;
};

/// N_tot/2 singles and N_tot/8 (1 + cos(2 pi f dT)/2) coincidences.
HbtPrediction hbt_oracle(double f_dt, double n_tot);

/// Tunneling transmittance from a characteristic-matrix evaluation of the
/// prism | vacuum gap | prism stack. xi mixes S and P as above.
double ftir_oracle(double w, double n, double theta, double xi);

/// Interface reflectance r^2 for polarization angle xi.
double fresnel_oracle(double theta, double n1, double n2, double xi);

} // namespace ebcm::oracles
