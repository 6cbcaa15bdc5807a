#pragma once

#include "xyz2/code.hpp"
#include "xyz2/noise.hpp"

namespace xyz2 {

// Closed-form logical failure rate under pure single-letter noise at rate p,
// for the XYZ^2 and XZZX codes (the rotated surface code has no closed
// form). Valid for p in [0, 0.5]; p = 0.5 is the exact 50% anchor.
//
//   xyz2, Z or Y axis:  sum_{k=N/2}^{N} C(N,k) p^k q^(N-k)
//                       - (1/2) C(N,N/2) (pq)^(N/2),          N = 2d^2
//   xyz2, X axis:       sum_{k=ceil(d/2)}^{d} C(d,k) po^k pe^(d-k),
//                       po = 2p(1-p), pe = (1-p)^2 + p^2
//   xzzx, X or Z axis:  same sum with po = p, pe = 1 - p
//   xzzx, Y axis:       sum_{k=ceil(N/2)}^{N} C(N,k) p^k q^(N-k), N = d^2
//
// Terms are accumulated smallest-to-largest in extended precision.
double analytic_pf_pure(CodeFamily family, int d, double p, Axis axis);

// Success probability, equal to the failure sum evaluated at 1 - p
// (internally extended above p = 0.5). Satisfies pf + ps = 1 for the
// binomial-in-p forms (xyz2 Z/Y, xzzx X/Z/Y).
double analytic_pf_pure_success(CodeFamily family, int d, double p, Axis axis);

}  // namespace xyz2
