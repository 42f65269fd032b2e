#pragma once

#include <complex>
#include <string>
#include <vector>

namespace twr {

using cplx = std::complex<double>;

/// Plane-wave mode seen from the accelerated frame.
struct ModeParams {
  double omega_hat = 1.0;  // Minkowski frequency, > 0
  double z = 1.0;          // Rindler spatial coordinate z1, > 0
  double a = 1.0;          // acceleration, > 0
  double omega = 1.0;      // Rindler frequency
};

/// Throws std::invalid_argument unless omega_hat, z and a are positive and finite.
void validate(const ModeParams& m);

/// Canonical deformation entering the spectrum. theta01 carries lowered
/// indices; the amplitude correction uses theta^{01} = -theta01.
struct DeformationInput {
  double theta01 = 0.0;
};

/// Gamma function on the complex plane (Lanczos, g = 607/128, with
/// reflection for Re s < 1/2). Throws std::domain_error at the poles.
cplx complex_gamma(cplx s);

/// T = a / (2 pi).
double hawking_temperature(double a);

/// f(omega) = (1/a) (omega_hat z)^{i omega/a} Gamma(-i omega/a) e^{pi omega/(2a)}.
/// Throws std::domain_error at omega = 0.
cplx f_closed(const ModeParams& m);

/// (2 pi/a) / (e^{2 pi omega/a} - 1).
double planck_power(double omega, double a);

struct QuadratureOptions {
  double eps0 = 0.1;     // largest damping in the extrapolation ladder
  int levels = 8;        // damping values eps0, eps0/2, ..., eps0/2^{levels-1}
  int panels = 4096;     // Gauss-Kronrod panels on the oscillatory tail
  double rel_tol = 1e-7; // convergence threshold on the extrapolated value
};

struct QuadratureResult {
  cplx value;
  double error = 0.0;       // absolute error estimate
  bool converged = false;   // error <= rel_tol * |value|
  double eps_min = 0.0;     // smallest damping used
};

/// The damped Mellin integral
///   J(s, q; eps) = int_0^inf u^{s - 1 + eps} e^{i q u - eps u} du,   Re s >= 0,
/// at a single damping value, with the absolute error estimate of the panel rule.
QuadratureResult damped_mellin(cplx s, double q, double eps, int panels);

/// J(s, q; 0) by Richardson extrapolation of damped_mellin over the eps ladder.
QuadratureResult mellin_extrapolated(cplx s, double q, const QuadratureOptions& opts = {});

/// f(omega) = int dtau exp(i omega_hat z e^{-a tau}) e^{i omega tau} by
/// quadrature: (1/a) J(-i omega/a, omega_hat z).
QuadratureResult f_quadrature(const ModeParams& m, const QuadratureOptions& opts = {});

/// I1(omega) = int dtau exp(i omega_hat z e^{-a tau}) e^{i omega tau} e^{-a tau}.
cplx shifted_integral_closed(const ModeParams& m);
QuadratureResult shifted_integral_quadrature(const ModeParams& m, const QuadratureOptions& opts = {});

struct PowerSpectrum {
  double from_amplitude = 0.0;  // omega |f(-omega)|^2
  double planck = 0.0;          // (2 pi/a)/(e^{2 pi omega/a} - 1)
};

/// Requires omega > 0.
PowerSpectrum power_spectrum(const ModeParams& m);

/// f(omega) (1 + (2 theta^{01} omega/(a z^2)) (i omega/a - 1)).
cplx deformed_f_theta(const ModeParams& m, const DeformationInput& d);

/// The same amplitude with both integrals done by quadrature:
///   f + (2 theta^{01} omega_hat / z) (i omega/a - 1) I1.
struct DeformedAmplitudeCheck {
  cplx closed;
  cplx quadrature;
  QuadratureResult f;
  QuadratureResult shifted;
};
DeformedAmplitudeCheck deformed_f_theta_quadrature(const ModeParams& m, const DeformationInput& d,
                                                   const QuadratureOptions& opts = {});

struct DeformedPower {
  double closed = 0.0;          // (1/T) (1/(e^{omega/T} - 1)) (1 - 2 theta01 omega/(pi T z^2))
  double amplitude = 0.0;       // omega (|f|^2 + 2 Re(conj(f) f_theta)) at -omega
  double planck = 0.0;
  double relative_shift = 0.0;  // -2 theta01 omega/(pi T z^2)
  bool outside_linear_regime = false;  // |relative_shift| > 0.1
};

/// Requires omega > 0.
DeformedPower deformed_power(const ModeParams& m, const DeformationInput& d);

enum class SpectrumMethod { ClosedForm, Quadrature };
std::string to_string(SpectrumMethod m);

struct SpectrumRow {
  double omega = 0.0;
  cplx f;                      // amplitude at -omega
  double power = 0.0;          // omega |f(-omega)|^2
  double power_deformed = 0.0; // first-order deformed omega P(-omega)
  SpectrumMethod method = SpectrumMethod::ClosedForm;
  double eps = 0.0;            // smallest damping (quadrature rows only)
  double error = 0.0;          // quadrature error estimate on f
  bool converged = true;
  bool outside_linear_regime = false;
};

struct SpectrumRequest {
  double a = 1.0;
  double omega_hat = 1.0;
  double z = 1.0;
  double theta01 = 0.0;
  std::vector<double> omegas;
  bool closed_form = true;
  bool quadrature = false;
  QuadratureOptions quad{};
};

struct SpectrumResult {
  SpectrumRequest request;
  std::vector<SpectrumRow> rows;
  bool all_converged() const;
  /// Columns: omega, re_f, im_f, power, power_deformed, method, eps, converged (0/1).
  std::string to_csv() const;
  /// Parameters and rows. `metadata_json` (a JSON object, may be empty) is embedded verbatim under "metadata".
  std::string to_json(const std::string& metadata_json = "") const;
};

/// Evaluates every requested method on every grid point, in grid order.
/// Throws std::invalid_argument on an empty grid or non-positive omega.
SpectrumResult compute_spectrum(const SpectrumRequest& req);

}  // namespace twr
