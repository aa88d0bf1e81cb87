#include "glogit/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "glogit/errors.hpp"

namespace glogit {

namespace {

using LgammaPolicy = boost::math::policies::policy<
    boost::math::policies::promote_double<false>>;

constexpr int kBetaCfMaxTerms = 500;
constexpr double kBetaCfEps = 1e-16;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_cont_frac(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaCfMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kBetaCfEps) break;
  }
  return h;
}

// I_x(a, b) through the direct continued fraction; valid when x is below the
// switch point, where the fraction converges quickly.
double inc_beta_direct(double x, double one_minus_x, double a, double b) {
  const double log_front =
      a * std::log(x) + b * std::log(one_minus_x) - log_beta(a, b);
  return std::exp(log_front) * beta_cont_frac(x, a, b) / a;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw DomainError(os.str());
  }
}

}  // namespace

RealInterval::RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream os;
    os << "invalid interval [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }
}

double log_gamma(double x) {
  require_positive(x, "log_gamma argument");
  return boost::math::lgamma(x, LgammaPolicy());
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta shape a");
  require_positive(b, "log_beta shape b");
  // Sorted so that log_beta(a, b) and log_beta(b, a) agree bit for bit.
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return log_gamma(lo) + log_gamma(hi) - log_gamma(lo + hi);
}

double reg_inc_beta(double t, double a, double b) {
  return reg_inc_beta(t, 1.0 - t, a, b);
}

double reg_inc_beta(double t, double one_minus_t, double a, double b) {
  require_positive(a, "reg_inc_beta shape a");
  require_positive(b, "reg_inc_beta shape b");
  if (!(t >= 0.0 && t <= 1.0) || !(one_minus_t >= 0.0 && one_minus_t <= 1.0)) {
    std::ostringstream os;
    os << "reg_inc_beta argument must lie in [0, 1], got " << t;
    throw DomainError(os.str());
  }
  if (t == 0.0) return 0.0;
  if (one_minus_t == 0.0) return 1.0;
  double value;
  if (t < (a + 1.0) / (a + b + 2.0)) {
    value = inc_beta_direct(t, one_minus_t, a, b);
  } else {
    value = 1.0 - inc_beta_direct(one_minus_t, t, b, a);
  }
  return std::clamp(value, 0.0, 1.0);
}

double find_root(const std::function<double(double)>& f,
                 const RealInterval& bracket, double tol, int max_iter) {
  if (!(tol > 0.0)) throw DomainError("find_root tolerance must be positive");
  double a = bracket.lo();
  double b = bracket.hi();
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "no sign change on [" << a << ", " << b << "]: f(lo)=" << fa
       << ", f(hi)=" << fb;
    throw RootError(RootError::Kind::no_sign_change, os.str());
  }

  // Brent's method; b always holds the best estimate and [b, c] brackets the
  // root.
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(fb) <= tol || std::fabs(xm) <= tol1 || fb == 0.0) {
      return std::clamp(b, bracket.lo(), bracket.hi());
    }
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (std::isnan(fb)) {
      throw RootError(RootError::Kind::no_convergence,
                      "find_root: function returned NaN");
    }
  }
  std::ostringstream os;
  os << "find_root did not converge in " << max_iter << " iterations";
  throw RootError(RootError::Kind::no_convergence, os.str());
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    if (prob == 0.0) return -std::numeric_limits<double>::infinity();
    if (prob == 1.0) return std::numeric_limits<double>::infinity();
    throw DomainError("normal_quantile probability must lie in [0, 1]");
  }
  const double q = prob - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? prob : 1.0 - prob;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

}  // namespace glogit
