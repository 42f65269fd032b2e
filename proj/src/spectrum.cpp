#include "twr/spectrum.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"

namespace twr {

namespace {

constexpr double pi = boost::math::constants::pi<double>();

// Godfrey's coefficients for g = 607/128.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr std::array<double, 15> lanczos_c{
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

cplx lanczos_gamma(cplx s) {
  s -= 1.0;
  cplx x = lanczos_c[0];
  for (std::size_t k = 1; k < lanczos_c.size(); ++k) x += lanczos_c[k] / (s + static_cast<double>(k));
  const cplx t = s + lanczos_g + 0.5;
  return std::sqrt(2.0 * pi) * std::exp((s + 0.5) * std::log(t) - t) * x;
}

// e^z - 1 without cancellation for small |z|.
cplx expm1(cplx z) {
  const double s = std::sin(z.imag() / 2.0);
  return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s, std::exp(z.real()) * std::sin(z.imag())};
}

cplx shifted_by(const ModeParams& m, double shift) { return {shift, -m.omega / m.a}; }

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

}  // namespace

void validate(const ModeParams& m) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(m.omega_hat)) throw std::invalid_argument("omega_hat must be positive");
  if (!positive(m.z)) throw std::invalid_argument("z must be positive");
  if (!positive(m.a)) throw std::invalid_argument("a must be positive");
  if (!std::isfinite(m.omega)) throw std::invalid_argument("omega must be finite");
}

cplx complex_gamma(cplx s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    throw std::domain_error("Gamma has a pole at " + fmt(s.real()));
  }
  if (s.real() < 0.5) return pi / (std::sin(pi * s) * lanczos_gamma(1.0 - s));
  return lanczos_gamma(s);
}

double hawking_temperature(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("acceleration must be positive");
  return a / (2.0 * pi);
}

cplx f_closed(const ModeParams& m) {
  validate(m);
  if (m.omega == 0.0) throw std::domain_error("f(omega) is singular at omega = 0");
  const double r = m.omega / m.a;
  const cplx phase = std::exp(cplx(0.0, r * std::log(m.omega_hat * m.z)));
  return (1.0 / m.a) * phase * complex_gamma(cplx(0.0, -r)) * std::exp(pi * r / 2.0);
}

double planck_power(double omega, double a) { return (2.0 * pi / a) / std::expm1(2.0 * pi * omega / a); }

QuadratureResult damped_mellin(cplx s, double q, double eps, int panels) {
  if (!(eps > 0.0)) throw std::invalid_argument("damping must be positive");
  if (panels < 1) throw std::invalid_argument("panel count must be positive");
  if (s.real() < 0.0) throw std::invalid_argument("damped_mellin needs Re s >= 0");
  using boost::math::quadrature::gauss_kronrod;
  const cplx sigma = s + eps;
  const cplx p(-eps, q);

  // [0, 1] with u = e^{-t}: int_0^inf e^{-sigma t} (e^{p e^{-t}} - 1) dt + 1/sigma.
  // The subtracted integrand is O(e^{-t}) so no damping is needed there.
  const double t_max = 45.0 + std::log1p(std::abs(p));
  auto head = [&](double t) { return std::exp(-sigma * t) * expm1(p * std::exp(-t)); };
  double head_err = 0.0;
  const cplx a_part = gauss_kronrod<double, 31>::integrate(head, 0.0, t_max, 25, 1e-15, &head_err) + 1.0 / sigma;

  // [1, U] on equal panels; beyond U the damping makes the tail negligible.
  const double u_max = 1.0 + (60.0 + 2.0 * std::max(0.0, sigma.real()) * std::log(1.0 + 60.0 / eps)) / eps;
  auto tail = [&](double u) { return std::exp((sigma - 1.0) * std::log(u) + p * u); };
  const double h = (u_max - 1.0) / panels;
  cplx b_part = 0.0;
  double tail_err = 0.0;
  for (int k = 0; k < panels; ++k) {
    double e = 0.0;
    b_part += gauss_kronrod<double, 61>::integrate(tail, 1.0 + k * h, 1.0 + (k + 1) * h, 0, 0.0, &e);
    tail_err += e;
  }
  const double cut = std::pow(u_max, std::max(0.0, sigma.real() - 1.0)) * std::exp(-eps * u_max) / eps;

  QuadratureResult r;
  r.value = a_part + b_part;
  r.error = head_err + tail_err + cut;
  r.converged = std::isfinite(r.value.real()) && std::isfinite(r.value.imag());
  r.eps_min = eps;
  return r;
}

QuadratureResult mellin_extrapolated(cplx s, double q, const QuadratureOptions& opts) {
  if (opts.levels < 2) throw std::invalid_argument("extrapolation needs at least two damping levels");
  if (!(opts.eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  if (s == 0.0) throw std::domain_error("J(s, q; 0) diverges at s = 0");
  const int n = opts.levels;
  std::vector<std::vector<cplx>> t(n, std::vector<cplx>(n));
  double quad_err = 0.0;
  double eps = opts.eps0;
  for (int k = 0; k < n; ++k, eps /= 2.0) {
    const QuadratureResult d = damped_mellin(s, q, eps, opts.panels);
    quad_err = std::max(quad_err, d.error);
    // The exact 1/(s + eps) has a pole at eps = -s, which for small |s| sits
    // inside the ladder. Without it the rest is analytic for Re(s + eps) > -1,
    // so the error is a power series in eps with a large radius.
    t[k][0] = d.value - 1.0 / (s + eps);
    for (int j = 1; j <= k; ++j) t[k][j] = t[k][j - 1] + (t[k][j - 1] - t[k - 1][j - 1]) / (std::ldexp(1.0, j) - 1.0);
  }
  QuadratureResult r;
  r.value = t[n - 1][n - 1] + 1.0 / s;
  r.error = std::abs(t[n - 1][n - 1] - t[n - 1][n - 2]) + quad_err;
  r.eps_min = eps * 2.0;
  r.converged = std::isfinite(r.error) && r.error <= opts.rel_tol * std::abs(r.value);
  return r;
}

QuadratureResult f_quadrature(const ModeParams& m, const QuadratureOptions& opts) {
  validate(m);
  if (m.omega == 0.0) throw std::domain_error("f(omega) is singular at omega = 0");
  QuadratureResult r = mellin_extrapolated(shifted_by(m, 0.0), m.omega_hat * m.z, opts);
  r.value /= m.a;
  r.error /= m.a;
  return r;
}

cplx shifted_integral_closed(const ModeParams& m) {
  validate(m);
  const cplx s = shifted_by(m, 1.0);
  // (-i q)^{-s} on the principal branch, -i = e^{-i pi/2}.
  const cplx log_p(std::log(m.omega_hat * m.z), -pi / 2.0);
  return (1.0 / m.a) * complex_gamma(s) * std::exp(-s * log_p);
}

QuadratureResult shifted_integral_quadrature(const ModeParams& m, const QuadratureOptions& opts) {
  validate(m);
  QuadratureResult r = mellin_extrapolated(shifted_by(m, 1.0), m.omega_hat * m.z, opts);
  r.value /= m.a;
  r.error /= m.a;
  return r;
}

PowerSpectrum power_spectrum(const ModeParams& m) {
  if (!(m.omega > 0.0)) throw std::invalid_argument("power spectrum needs omega > 0");
  ModeParams neg = m;
  neg.omega = -m.omega;
  return {m.omega * std::norm(f_closed(neg)), planck_power(m.omega, m.a)};
}

namespace {

// theta^{01} = -theta01 (one time index lowered).
cplx correction_factor(const ModeParams& m, const DeformationInput& d) {
  const double theta_up = -d.theta01;
  return (2.0 * theta_up * m.omega / (m.a * m.z * m.z)) * cplx(-1.0, m.omega / m.a);
}

}  // namespace

cplx deformed_f_theta(const ModeParams& m, const DeformationInput& d) {
  return f_closed(m) * (1.0 + correction_factor(m, d));
}

DeformedAmplitudeCheck deformed_f_theta_quadrature(const ModeParams& m, const DeformationInput& d,
                                                   const QuadratureOptions& opts) {
  DeformedAmplitudeCheck c;
  c.closed = deformed_f_theta(m, d);
  c.f = f_quadrature(m, opts);
  c.shifted = shifted_integral_quadrature(m, opts);
  const double theta_up = -d.theta01;
  c.quadrature = c.f.value + (2.0 * theta_up * m.omega_hat / m.z) * cplx(-1.0, m.omega / m.a) * c.shifted.value;
  return c;
}

DeformedPower deformed_power(const ModeParams& m, const DeformationInput& d) {
  if (!(m.omega > 0.0)) throw std::invalid_argument("deformed power needs omega > 0");
  validate(m);
  const double t = hawking_temperature(m.a);
  DeformedPower p;
  p.planck = (1.0 / t) / std::expm1(m.omega / t);
  p.relative_shift = -2.0 * d.theta01 * m.omega / (pi * t * m.z * m.z);
  p.closed = p.planck * (1.0 + p.relative_shift);
  p.outside_linear_regime = std::abs(p.relative_shift) > 0.1;

  ModeParams neg = m;
  neg.omega = -m.omega;
  const cplx f = f_closed(neg);
  const cplx f_theta = f * correction_factor(neg, d);
  p.amplitude = m.omega * (std::norm(f) + 2.0 * (std::conj(f) * f_theta).real());
  return p;
}

std::string to_string(SpectrumMethod m) { return m == SpectrumMethod::ClosedForm ? "closed-form" : "quadrature"; }

bool SpectrumResult::all_converged() const {
  for (const auto& r : rows) {
    if (!r.converged) return false;
  }
  return true;
}

std::string SpectrumResult::to_csv() const {
  std::ostringstream out;
  out << "omega,re_f,im_f,power,power_deformed,method,eps,converged\n";
  for (const auto& r : rows) {
    out << fmt(r.omega) << ',' << fmt(r.f.real()) << ',' << fmt(r.f.imag()) << ',' << fmt(r.power) << ','
        << fmt(r.power_deformed) << ',' << to_string(r.method) << ',' << fmt(r.eps) << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string SpectrumResult::to_json(const std::string& metadata_json) const {
  nlohmann::ordered_json j;
  if (!metadata_json.empty()) j["metadata"] = nlohmann::ordered_json::parse(metadata_json);
  auto& p = j["parameters"];
  p["a"] = request.a;
  p["omega_hat"] = request.omega_hat;
  p["z"] = request.z;
  p["theta01"] = request.theta01;
  p["temperature"] = hawking_temperature(request.a);
  p["quadrature"] = {{"eps0", request.quad.eps0},
                     {"levels", request.quad.levels},
                     {"panels", request.quad.panels},
                     {"rel_tol", request.quad.rel_tol}};
  auto& rows_json = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row{{"omega", r.omega},
                               {"re_f", r.f.real()},
                               {"im_f", r.f.imag()},
                               {"power", r.power},
                               {"power_deformed", r.power_deformed},
                               {"method", to_string(r.method)}};
    if (r.method == SpectrumMethod::Quadrature) {
      row["eps"] = r.eps;
      row["error"] = r.error;
      row["converged"] = r.converged;
    }
    row["outside_linear_regime"] = r.outside_linear_regime;
    rows_json.push_back(std::move(row));
  }
  j["all_converged"] = all_converged();
  return j.dump(2) + "\n";
}

SpectrumResult compute_spectrum(const SpectrumRequest& req) {
  if (req.omegas.empty()) throw std::invalid_argument("empty frequency grid");
  if (!req.closed_form && !req.quadrature) throw std::invalid_argument("no spectrum method selected");
  SpectrumResult result{req, {}};
  const DeformationInput d{req.theta01};
  for (double w : req.omegas) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("grid frequencies must be positive, got " + fmt(w));
    const ModeParams m{req.omega_hat, req.z, req.a, w};
    const ModeParams neg{req.omega_hat, req.z, req.a, -w};
    const DeformedPower dp = deformed_power(m, d);
    if (req.closed_form) {
      SpectrumRow row;
      row.omega = w;
      row.f = f_closed(neg);
      row.power = w * std::norm(row.f);
      row.power_deformed = dp.closed;
      row.outside_linear_regime = dp.outside_linear_regime;
      result.rows.push_back(row);
    }
    if (req.quadrature) {
      const DeformedAmplitudeCheck c = deformed_f_theta_quadrature(neg, d, req.quad);
      SpectrumRow row;
      row.omega = w;
      row.method = SpectrumMethod::Quadrature;
      row.f = c.f.value;
      row.power = w * std::norm(c.f.value);
      const cplx f_theta = c.quadrature - c.f.value;
      row.power_deformed = w * (std::norm(c.f.value) + 2.0 * (std::conj(c.f.value) * f_theta).real());
      row.eps = c.f.eps_min;
      row.error = std::max(c.f.error, c.shifted.error);
      row.converged = c.f.converged && (req.theta01 == 0.0 || c.shifted.converged);
      row.outside_linear_regime = dp.outside_linear_regime;
      result.rows.push_back(row);
    }
  }
  return result;
}

}  // namespace twr
