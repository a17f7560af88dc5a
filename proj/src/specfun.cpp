#include "fmb/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

namespace fmb {

namespace {

// Lanczos approximation, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

// log Gamma(x) for x >= 0.5.
double lanczos_log_gamma(double x) {
  const double z = x - 1;
  double a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + double(k));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double lanczos_gamma(double x) {
  const double z = x - 1;
  double a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + double(k));
  const double t = z + kLanczosG + 0.5;
  if (x < 140) return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
  // split the power to postpone overflow
  const double h = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2 * kPi) * h * (h * std::exp(-t)) * a;
}

double digamma_positive(double x) {
  double acc = 0;
  while (x < 10) {
    acc -= 1 / x;
    x += 1;
  }
  const double r = 1 / (x * x);
  const double series =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
  return acc + std::log(x) - 0.5 / x - series;
}

void require_not_pole(double x, const char* what) {
  if (is_nonpositive_integer(x))
    throw PoleError(std::string(what) + ": pole at x = " + std::to_string(x));
}

}  // namespace

double gamma_fn(double x) {
  require_not_pole(x, "gamma");
  if (x >= 1 && x <= 30 && x == std::floor(x)) {  // exact factorials
    double f = 1;
    for (int k = 2; k < int(x); ++k) f *= k;
    return f;
  }
  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1 - x));
  return lanczos_gamma(x);
}

double ln_gamma(double x) {
  require_not_pole(x, "ln_gamma");
  if (x < 0.5) return std::log(kPi / std::abs(std::sin(kPi * x))) - lanczos_log_gamma(1 - x);
  return lanczos_log_gamma(x);
}

double digamma(double x) {
  require_not_pole(x, "digamma");
  if (x < 0) return digamma_positive(1 - x) - kPi / std::tan(kPi * x);
  return digamma_positive(x);
}

GammaFamily gamma_family(double x) { return {gamma_fn(x), ln_gamma(x), digamma(x)}; }

double binom(double a, double b) {
  const double c = a - b;
  // Gamma of a negative integer in the denominator makes the value 0.
  if (is_nonpositive_integer(b + 1) || is_nonpositive_integer(c + 1)) return 0;
  const double sign = (gamma_fn(a + 1) < 0 ? -1 : 1) * (gamma_fn(b + 1) < 0 ? -1 : 1) *
                      (gamma_fn(c + 1) < 0 ? -1 : 1);
  return sign * std::exp(ln_gamma(a + 1) - ln_gamma(b + 1) - ln_gamma(c + 1));
}

double harmonic(int n) {
  double h = 0;
  for (int j = 1; j <= n; ++j) h += 1.0 / j;
  return h;
}

double omega(double q) { return std::pow(kPi, q / 2) / gamma_fn(1 + q / 2); }

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1 - x2 / 6 * (1 - x2 / 20);
  }
  return std::sin(x) / x;
}

double cos_half_pi_over_one_minus(double p) {
  // cos(pi p/2) = sin(pi (1-p)/2)
  const double e = 1 - p;
  return (kPi / 2) * sinc(kPi * e / 2);
}

double cos_half_pi_over_13(double p) {
  if (std::abs(p - 3) < 0.5) {
    // cos(pi p/2) = -sin(pi (3-p)/2)
    const double e = 3 - p;
    return -(kPi / 2) * sinc(kPi * e / 2) / (1 - p);
  }
  return cos_half_pi_over_one_minus(p) / (3 - p);
}

double gamma_one_minus_cos(double p) {
  // Gamma(1-p) cos(pi p/2) = Gamma(2-p) cos(pi p/2) / (1-p)
  return gamma_fn(2 - p) * cos_half_pi_over_one_minus(p);
}

// Hankel expansion, accurate for mu <= 2 and t >= 12; stops at the smallest term.
static double bessel_j_hankel(double mu, double t) {
  const double m4 = 4 * mu * mu;
  double P = 0, Q = 0;
  double a = 1;
  double prev = kInf;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) a *= (m4 - double(2 * k - 1) * double(2 * k - 1)) / (k * 8 * t);
    const double mag = std::abs(a);
    if (mag > prev) break;
    prev = mag;
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0)
      P += sign * a;
    else
      Q += sign * a;
    if (mag < 1e-17) break;
  }
  const double chi = t - (mu / 2 + 0.25) * kPi;
  return std::sqrt(2 / (kPi * t)) * (P * std::cos(chi) - Q * std::sin(chi));
}

double bessel_j(double mu, double t) {
  if (mu < 0 || t < 0) throw DomainError("bessel_j: requires mu >= 0 and t >= 0");
  if (t == 0) return mu == 0 ? 1.0 : 0.0;
  if (t < 12 || mu > t) {
    const double half = t / 2;
    double term = std::exp(mu * std::log(half) - ln_gamma(mu + 1));
    double sum = term;
    const double q = half * half;
    for (int k = 1; k < 500; ++k) {
      term *= -q / (k * (k + mu));
      sum += term;
      if (k > half && std::abs(term) < 1e-17 * std::max(std::abs(sum), 1e-300)) break;
    }
    return sum;
  }
  if (mu <= 2) return bessel_j_hankel(mu, t);
  // Upward recurrence from orders in [0, 2) is stable while the order stays below t.
  double nu = mu - 2 * std::floor(mu / 2);
  double j0 = bessel_j_hankel(nu, t), j1 = bessel_j_hankel(nu + 1, t);
  while (nu + 1 < mu - 0.5) {
    const double j2 = 2 * (nu + 1) / t * j1 - j0;
    j0 = j1;
    j1 = j2;
    nu += 1;
  }
  return std::abs(nu - mu) < 0.5 ? j0 : j1;
}

double bessel_mellin_sq(double mu, double nu) {
  if (!(-nu / 2 > -0.5)) throw DomainError("bessel_mellin_sq: violates -1/2 < -nu/2");
  if (!(-nu / 2 < mu)) throw DomainError("bessel_mellin_sq: violates -nu/2 < mu");
  const double lead = std::exp(ln_gamma(1 - nu) - (1 - nu) * std::log(2.0) - 2 * ln_gamma(1 - nu / 2));
  return lead * std::exp(ln_gamma(mu + nu / 2) - ln_gamma(mu + 1 - nu / 2));
}

double dirichlet_sine(double a, double p) {
  if (!(a > 0)) throw DomainError("dirichlet_sine: requires a > 0");
  if (!(p > 1 && p < 2)) throw DomainError("dirichlet_sine: requires 1 < p < 2");
  return std::pow(a, 1 - p) * gamma_fn(p) * cos_half_pi_over_one_minus(p);
}

double sine_sq_mellin(double a, double p) {
  if (!(p > 0 && p < 2)) throw DomainError("sine_sq_mellin: requires 0 < p < 2");
  // Gamma(p+1) cos(pi p/2) / (p (p-1) (p-2) 2^(p-1)) a^(2-p)
  const double c = -cos_half_pi_over_one_minus(p);  // cos/(p-1)
  return std::pow(a, 2 - p) * gamma_fn(p + 1) * c / (p * (p - 2) * std::pow(2.0, p - 1));
}

double d_coeff(double p) {
  if (!(p > 0 && p < 4) || p == 2) throw DomainError("d_coeff: requires p in (0,4), p != 2");
  return cos_half_pi_over_13(p) * gamma_fn(p + 1) * std::pow(2.0, 1 - p) / ((4 - p) * (2 - p));
}

namespace {

// (1-t)^q + (1+t)^q - 2 for 0 <= t <= 1.
double even_binomial_excess(double q, double t) {
  if (t < 0.5) {
    double sum = 0;
    double c = 1;  // C(q, k)
    double tk = 1;
    for (int k = 1; k < 200; ++k) {
      c *= (q - (k - 1)) / k;
      tk *= t;
      if (k % 2 == 0) {
        const double term = 2 * c * tk;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
    }
    return sum;
  }
  return std::pow(1 - t, q) + std::pow(1 + t, q) - 2;
}

// (1-t)^2 ln(1-t) + (1+t)^2 ln(1+t), used by the p = 2 limit.
double excess_log_form(double t) {
  auto f = [](double y) { return y > 0 ? y * y * std::log(y) : 0.0; };
  if (t < 0.5) {
    // 3 t^2 - sum_{k>=2} 4 t^(2k) / (m (m-1) (m-2)), m = 2k
    double sum = 3 * t * t;
    double tk = t * t;
    for (int k = 2; k < 200; ++k) {
      tk *= t * t;
      const double m = 2.0 * k;
      const double term = 4 * tk / (m * (m - 1) * (m - 2));
      sum -= term;
      if (term < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return f(1 - t) + f(1 + t);
}

}  // namespace

double sin2sin2_mellin(double p, double x1, double x2) {
  if (!(p > 0 && p < 4)) throw DomainError("sin2sin2_mellin: requires 0 < p < 4");
  if (!(x1 > 0 && x2 > 0)) throw DomainError("sin2sin2_mellin: requires x1, x2 > 0");
  if (x2 > x1) std::swap(x1, x2);
  const double t = x2 / x1;
  if (std::abs(p - 2) < 1e-7) {
    // d_p B_p -> (1/2) sum c_k y_k^2 ln y_k
    const double inner = excess_log_form(t);
    const double L = std::log(x1);
    // y = x1 (1 +- t): y^2 ln y = x1^2 (1+-t)^2 (L + ln(1+-t))
    const double sum_sq = 2 * t * t;  // (1-t)^2 + (1+t)^2 - 2
    const double val = x1 * x1 * (inner + L * sum_sq) - 2 * x2 * x2 * std::log(x2);
    return 0.5 * val;
  }
  const double q = 4 - p;
  const double B = std::pow(x1, q) * even_binomial_excess(q, t) - 2 * std::pow(x2, q);
  return d_coeff(p) * B;
}

std::optional<double> m_coeff(int n, double p) {
  const double x = p - n;
  if (x >= 0 && x == std::floor(x)) {
    const long k = std::lround(x);
    if (k % 2 == 0) return gamma_fn(x + 1) * ((k / 2) % 2 == 0 ? 1.0 : -1.0);
    return -(2 / kPi) * gamma_fn(x + 1) * std::sin(kPi * x / 2);
  }
  if (x < 0 && x == std::floor(x)) {
    const long k = std::lround(-x);
    if (k % 2 == 1) return std::nullopt;  // genuine pole
    // Gamma(1+x) sin(pi x/2) = -pi / (2 cos(pi x/2) Gamma(-x))
    return 1.0 / (((k / 2) % 2 == 0 ? 1.0 : -1.0) * gamma_fn(-x));
  }
  return -(2 / kPi) * gamma_fn(x + 1) * std::sin(kPi * x / 2);
}

double kappa(int n, double p) {
  if (!(p > -1)) throw DomainError("kappa: requires p > -1");
  if (p == 0) return std::exp(-harmonic(2 * n));
  return std::pow(binom(2.0 * n + p, p), -1 / p);
}

double kappa_s(int n, double p, double s) {
  if (!(s > 0)) throw DomainError("kappa_s: requires s > 0");
  if (!(p > -1)) throw DomainError("kappa_s: requires p > -1");
  const double a = 1 / s + n;
  if (p == 0) return std::exp(digamma(1) - digamma(a + 1));
  return std::pow(binom(a + p, p), -1 / p);
}

std::optional<double> lambda_coeff(int n, double p) {
  if (!(p > 0 && p <= 1)) return std::nullopt;
  if (p == 1) return 1 / (kPi * n);
  // C(2n-p, 2n) / (Gamma(p+1) cos(pi p/2)); the 1/Gamma(1-p) of the binomial
  // is paired with cos to stay finite near p = 1.
  const double num = std::exp(ln_gamma(2.0 * n - p + 1) - ln_gamma(2.0 * n + 1));
  const double den = gamma_fn(p + 1) * gamma_one_minus_cos(p);
  return std::pow(num / den, 1 / p);
}

double binom_radial(int n, double p) {
  if (!(p > -1)) throw DomainError("binom_radial: requires p > -1");
  if (p == 0) return std::exp(harmonic(n));
  return std::pow(binom(double(n) + p, double(n)), 1 / p);
}

CoeffBundle coefficients(int n, double p, std::optional<double> s) {
  if (n < 1) throw DomainError("coefficients: requires n >= 1");
  CoeffBundle b;
  b.n = n;
  b.p = p;
  b.m_p = m_coeff(n, p);
  if (p > -1) {
    b.kappa_p = kappa(n, p);
    b.binom_radial = fmb::binom_radial(n, p);
    if (s && *s > 0) b.kappa_s_p = kappa_s(n, p, *s);
  }
  b.lambda_p = lambda_coeff(n, p);
  if (p > 0 && p < 4 && p != 2) b.d_p = d_coeff(p);
  b.omega_q = omega(n);
  const double q = p - n;
  if (q >= 0) b.alpha_q = digamma(q + 1);  // psi(1) + H_q
  return b;
}

}  // namespace fmb
