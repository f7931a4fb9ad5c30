#pragma once

#include <complex>
#include <vector>

namespace rcis {

// Polynomials in the unit-delay variable: c[i] multiplies delay^i.
using Poly = std::vector<double>;
using Complex = std::complex<double>;

// Drops trailing coefficients with |c| <= tol * max|c|; keeps at least one term.
Poly trim_poly(const Poly& p, double tol = 1e-12);

// Coefficient-wise a + scale * b.
Poly poly_add(const Poly& a, const Poly& b, double scale = 1.0);

// Polynomial product.
Poly poly_mul(const Poly& a, const Poly& b);

// Prepends k zero coefficients (multiplication by delay^k).
Poly poly_shift(const Poly& p, int k);

// Horner evaluation at a complex point.
Complex poly_eval(const Poly& p, Complex x);

double poly_eval_real(const Poly& p, double x);

// Roots of sum_i c[i] x^i, c given low-to-high degree. Aberth-Ehrlich iteration
// with deterministic initialization; throws RootFindingFailure on
// non-convergence. Leading/trailing zero coefficients are handled (trailing
// zeros yield no extra roots; a zero constant term yields roots at x = 0).
std::vector<Complex> poly_roots(const Poly& coeffs_low_to_high);

// Roots in the z-plane of the delay polynomial p (poles "after clearing
// delays"): the roots of z^deg * p(1/z).
std::vector<Complex> delay_poly_roots_z(const Poly& p);

// Rebuilds a real monic polynomial (low-to-high in the same variable as the
// roots) from a set of roots closed under conjugation.
Poly poly_from_roots(const std::vector<Complex>& roots);

}  // namespace rcis
