#include "rcis/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rcis/errors.hpp"

namespace rcis {

Poly trim_poly(const Poly& p, double tol) {
  double max_abs = 0.0;
  for (double c : p) max_abs = std::max(max_abs, std::abs(c));
  const double cut = tol * std::max(max_abs, 1e-300);
  std::size_t n = p.size();
  while (n > 1 && std::abs(p[n - 1]) <= cut) --n;
  return Poly(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n));
}

Poly poly_add(const Poly& a, const Poly& b, double scale) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += scale * b[i];
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_shift(const Poly& p, int k) {
  if (k <= 0) return p;
  Poly out(static_cast<std::size_t>(k), 0.0);
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

Complex poly_eval(const Poly& p, Complex x) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

double poly_eval_real(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

namespace {

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

// Aberth-Ehrlich simultaneous iteration on a monic-normalized polynomial.
std::vector<Complex> aberth_roots(const Poly& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  const double lead = coeffs.back();
  Poly monic(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / lead;
  const Poly dmonic = derivative(monic);

  // Fujiwara bound on the root radius; stays tight when the leading
  // coefficient is small.
  double radius = 0.0;
  for (std::size_t i = 0; i < deg; ++i) {
    const double term =
        std::pow(std::abs(monic[i]), 1.0 / static_cast<double>(deg - i));
    radius = std::max(radius, term);
  }
  radius = 2.0 * radius + 1e-3;

  std::vector<Complex> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
    z[k] = radius * Complex(std::cos(angle), std::sin(angle));
  }

  const int max_iters = 600;
  double best = 1e300;
  int stagnant = 0;
  for (int iter = 0; iter < max_iters; ++iter) {
    double worst = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      const Complex pk = poly_eval(monic, z[k]);
      const Complex dk = poly_eval(dmonic, z[k]);
      Complex ratio;
      if (std::abs(dk) > 0.0) {
        ratio = pk / dk;
      } else {
        ratio = Complex(1e-12, 1e-12);
      }
      Complex sum(0.0, 0.0);
      for (std::size_t j = 0; j < deg; ++j) {
        if (j == k) continue;
        const Complex diff = z[k] - z[j];
        if (std::abs(diff) < 1e-300) continue;
        sum += 1.0 / diff;
      }
      const Complex denom = 1.0 - ratio * sum;
      Complex step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-13) break;
    // Accept a stagnating iteration once it is in the noise floor; the Newton
    // polish below recovers the last digits.
    if (worst < 0.7 * best) {
      best = worst;
      stagnant = 0;
    } else if (++stagnant >= 16 && worst < 1e-9) {
      break;
    }
    if (iter == max_iters - 1) {
      throw RootFindingFailure("polynomial root iteration did not converge");
    }
  }

  // One Newton polish per root.
  for (std::size_t k = 0; k < deg; ++k) {
    const Complex dk = poly_eval(dmonic, z[k]);
    if (std::abs(dk) > 1e-300) z[k] -= poly_eval(monic, z[k]) / dk;
    if (std::abs(z[k].imag()) < 1e-12 * (1.0 + std::abs(z[k].real()))) {
      z[k] = Complex(z[k].real(), 0.0);
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& coeffs_low_to_high) {
  Poly p = trim_poly(coeffs_low_to_high, 0.0);  // exact trailing-zero trim
  for (double c : p) {
    if (!std::isfinite(c)) throw InvalidParameters("non-finite polynomial coefficient");
  }

  // Zero constant terms factor out as roots at the origin.
  std::vector<Complex> roots;
  std::size_t low = 0;
  while (low + 1 < p.size() && p[low] == 0.0) ++low;
  for (std::size_t i = 0; i < low; ++i) roots.emplace_back(0.0, 0.0);
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));

  const std::size_t deg = p.size() - 1;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.emplace_back(-p[0] / p[1], 0.0);
    return roots;
  }
  if (deg == 2) {
    const double a = p[2], b = p[1], c = p[0];
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
      const double r1 = q / a;
      const double r2 = (q != 0.0) ? c / q : -b / a - r1;
      roots.emplace_back(r1, 0.0);
      roots.emplace_back(r2, 0.0);
    } else {
      const double re = -b / (2.0 * a);
      const double im = std::sqrt(-disc) / (2.0 * a);
      roots.emplace_back(re, im);
      roots.emplace_back(re, -im);
    }
    return roots;
  }

  auto inner = aberth_roots(p);
  roots.insert(roots.end(), inner.begin(), inner.end());
  return roots;
}

std::vector<Complex> delay_poly_roots_z(const Poly& p) {
  Poly t = trim_poly(p, 0.0);
  // z^deg * p(1/z): reverse the coefficients.
  Poly rev(t.rbegin(), t.rend());
  return poly_roots(rev);
}

Poly poly_from_roots(const std::vector<Complex>& roots) {
  // Multiply linear/quadratic real factors; conjugates are paired greedily.
  Poly out{1.0};
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    const Complex r = roots[i];
    if (std::abs(r.imag()) < 1e-10 * (1.0 + std::abs(r.real()))) {
      out = poly_mul(out, Poly{-r.real(), 1.0});
      used[i] = true;
      continue;
    }
    std::size_t match = roots.size();
    double best = 1e100;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[j] - std::conj(r));
      if (d < best) {
        best = d;
        match = j;
      }
    }
    if (match == roots.size()) throw InvalidParameters("root set not closed under conjugation");
    used[i] = used[match] = true;
    out = poly_mul(out, Poly{std::norm(r), -2.0 * r.real(), 1.0});
  }
  return out;
}

}  // namespace rcis
