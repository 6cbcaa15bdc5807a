#include "xyz2/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace xyz2 {

namespace {

long double pow_int(long double base, unsigned e) {
  long double r = 1.0L;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// sum_{k=kmin}^{N} C(N,k) a^k b^(N-k), plus `extra` thrown into the same
// compensated accumulation. Terms are sorted and added smallest first.
long double binom_tail(unsigned N, unsigned kmin, long double a, long double b,
                       long double extra = 0.0L) {
  std::vector<long double> terms;
  terms.reserve(N - kmin + 2);
  if (extra != 0.0L) terms.push_back(extra);

  // C(N,k) by the exact recurrence; every intermediate is an integer.
  long double c = 1.0L;
  for (unsigned k = 0; k < kmin; ++k) c = c * (N - k) / (k + 1);
  for (unsigned k = kmin; k <= N; ++k) {
    terms.push_back(c * pow_int(a, k) * pow_int(b, N - k));
    if (k < N) c = c * (N - k) / (k + 1);
  }
  std::sort(terms.begin(), terms.end());

  long double sum = 0.0L, comp = 0.0L;
  for (long double t : terms) {
    long double y = t - comp;
    long double u = sum + y;
    comp = (u - sum) - y;
    sum = u;
  }
  return sum;
}

// Failure sum without the domain restriction; used internally to extend the
// success identity above p = 0.5.
double pf_raw(CodeFamily family, int d, double p, Axis axis) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("analytic_pf_pure: d must be odd and >= 3");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("analytic_pf_pure: p out of range");

  long double lp = p, lq = 1.0L - lp;
  switch (family) {
    case CodeFamily::Xyz2: {
      if (axis == Axis::X) {
        unsigned n = unsigned(d);
        long double po = 2.0L * lp * lq;
        long double pe = lq * lq + lp * lp;
        return double(binom_tail(n, (n + 1) / 2, po, pe));
      }
      // Z and Y are equivalent: the only pure chain commuting with
      // everything is the all-qubit one, so decoding reduces to a weighted
      // majority over N = 2d^2 qubits with a half-weight marginal term.
      unsigned N = 2u * unsigned(d) * unsigned(d);
      long double c_half = 1.0L;
      for (unsigned k = 0; k < N / 2; ++k) c_half = c_half * (N - k) / (k + 1);
      long double marginal =
          0.5L * c_half * pow_int(lp, N / 2) * pow_int(lq, N - N / 2);
      return double(binom_tail(N, N / 2 + 1, lp, lq, marginal));
    }
    case CodeFamily::Xzzx: {
      if (axis == Axis::Y) {
        unsigned N = unsigned(d) * unsigned(d);  // odd, no marginal term
        return double(binom_tail(N, (N + 1) / 2, lp, lq));
      }
      unsigned n = unsigned(d);
      return double(binom_tail(n, (n + 1) / 2, lp, lq));
    }
    case CodeFamily::RotatedSurface:
      throw std::invalid_argument(
          "analytic_pf_pure: no closed form for the rotated surface code");
  }
  throw std::invalid_argument("analytic_pf_pure: unknown family");
}

}  // namespace

double analytic_pf_pure(CodeFamily family, int d, double p, Axis axis) {
  if (!(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("analytic_pf_pure: requires 0 <= p <= 0.5");
  return pf_raw(family, d, p, axis);
}

double analytic_pf_pure_success(CodeFamily family, int d, double p, Axis axis) {
  if (!(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("analytic_pf_pure_success: requires 0 <= p <= 0.5");
  return pf_raw(family, d, 1.0 - p, axis);
}

}  // namespace xyz2
