#include "rcis/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rcis/errors.hpp"

namespace rcis {

namespace {

bool all_finite(const Poly& p) {
  return std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); });
}

bool all_zero(const Poly& p) {
  return std::all_of(p.begin(), p.end(), [](double c) { return c == 0.0; });
}

std::size_t leading_zeros(const Poly& p) {
  std::size_t n = 0;
  while (n < p.size() && p[n] == 0.0) ++n;
  return n;
}

// Cancels a shared pure-delay factor; exact zeros only.
void cancel_common_delay(Poly& num, Poly& den) {
  const std::size_t k = std::min(leading_zeros(num), leading_zeros(den));
  if (k == 0 || k >= den.size() || k >= num.size()) return;
  num.erase(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(k));
  den.erase(den.begin(), den.begin() + static_cast<std::ptrdiff_t>(k));
}

TransferFunction make_clean(Poly num, Poly den, int preview, double ts) {
  num = trim_poly(num);
  den = trim_poly(den);
  if (all_zero(num)) return TransferFunction(Poly{0.0}, Poly{1.0}, 0, ts);
  cancel_common_delay(num, den);
  return TransferFunction(std::move(num), std::move(den), preview, ts);
}

}  // namespace

TransferFunction::TransferFunction(Poly numerator, Poly denominator, int preview_steps,
                                   double ts)
    : num(std::move(numerator)), den(std::move(denominator)), preview(preview_steps),
      sample_time(ts) {
  if (num.empty()) num = {0.0};
  if (den.empty() || den[0] == 0.0) {
    throw InvalidParameters("denominator constant term must be nonzero");
  }
  if (!all_finite(num) || !all_finite(den)) {
    throw InvalidParameters("transfer function coefficients must be finite");
  }
  if (preview < 0) throw InvalidParameters("preview must be non-negative");
  if (!(sample_time > 0.0) || !std::isfinite(sample_time)) {
    throw InvalidParameters("sample_time must be positive");
  }
  const double d0 = den[0];
  if (d0 != 1.0) {
    for (double& c : num) c /= d0;
    for (double& c : den) c /= d0;
    den[0] = 1.0;
  }
}

TransferFunction TransferFunction::constant(double c, double ts) {
  return TransferFunction(Poly{c}, Poly{1.0}, 0, ts);
}

TransferFunction TransferFunction::delay(int steps, double ts) {
  if (steps < 0) throw InvalidParameters("delay steps must be non-negative");
  Poly num(static_cast<std::size_t>(steps) + 1, 0.0);
  num.back() = 1.0;
  return TransferFunction(std::move(num), Poly{1.0}, 0, ts);
}

bool TransferFunction::is_strictly_proper() const {
  return preview == 0 && num[0] == 0.0;
}

FrfData::FrfData(std::vector<double> w, std::vector<Complex> v, FrfSource src)
    : omegas(std::move(w)), values(std::move(v)), source(src) {
  if (omegas.size() != values.size()) {
    throw InvalidParameters("FRF grid and value lengths differ");
  }
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] < -1e-12 || omegas[i] > M_PI + 1e-9) {
      throw InvalidParameters("FRF frequencies must lie in [0, pi]");
    }
    if (i > 0 && omegas[i] <= omegas[i - 1]) {
      throw InvalidParameters("FRF frequencies must be strictly increasing");
    }
  }
}

TransferFunction tf_add(const TransferFunction& a, const TransferFunction& b) {
  const int p = std::max(a.preview, b.preview);
  Poly num = poly_add(poly_shift(poly_mul(a.num, b.den), p - a.preview),
                      poly_shift(poly_mul(b.num, a.den), p - b.preview));
  Poly den = poly_mul(a.den, b.den);
  return make_clean(std::move(num), std::move(den), p, a.sample_time);
}

TransferFunction tf_sub(const TransferFunction& a, const TransferFunction& b) {
  const int p = std::max(a.preview, b.preview);
  Poly num = poly_add(poly_shift(poly_mul(a.num, b.den), p - a.preview),
                      poly_shift(poly_mul(b.num, a.den), p - b.preview), -1.0);
  Poly den = poly_mul(a.den, b.den);
  return make_clean(std::move(num), std::move(den), p, a.sample_time);
}

TransferFunction tf_mul(const TransferFunction& a, const TransferFunction& b) {
  return make_clean(poly_mul(a.num, b.num), poly_mul(a.den, b.den),
                    a.preview + b.preview, a.sample_time);
}

TransferFunction tf_scale(const TransferFunction& a, double c) {
  Poly num = a.num;
  for (double& x : num) x *= c;
  return make_clean(std::move(num), a.den, a.preview, a.sample_time);
}

namespace {

// Closed-loop numerator/denominator of G H around the unity loop.
struct LoopParts {
  Poly forward;  // n_G n_H
  Poly closed;   // q^p d_G d_H + n_G n_H
  Poly open;     // q^p d_G d_H
};

LoopParts loop_parts(const TransferFunction& g, const TransferFunction& h) {
  const int p = g.preview + h.preview;
  LoopParts parts;
  parts.forward = poly_mul(g.num, h.num);
  parts.open = poly_shift(poly_mul(g.den, h.den), p);
  parts.closed = poly_add(parts.open, parts.forward);
  return parts;
}

double poly_scale_of(const Poly& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  return std::max(m, 1e-300);
}

}  // namespace

TransferFunction tf_feedback(const TransferFunction& g, const TransferFunction& h) {
  LoopParts parts = loop_parts(g, h);
  Poly num = trim_poly(parts.forward);
  Poly den = trim_poly(parts.closed);
  if (std::all_of(num.begin(), num.end(), [](double c) { return c == 0.0; })) {
    return TransferFunction::constant(0.0, g.sample_time);
  }
  cancel_common_delay(num, den);
  if (std::abs(den[0]) < 1e-12 * poly_scale_of(den)) {
    throw AlgebraicLoop("instantaneous loop gain equals -1");
  }
  return TransferFunction(std::move(num), std::move(den), 0, g.sample_time);
}

TransferFunction tf_sensitivity(const TransferFunction& g, const TransferFunction& h) {
  LoopParts parts = loop_parts(g, h);
  Poly num = trim_poly(parts.open);
  Poly den = trim_poly(parts.closed);
  cancel_common_delay(num, den);
  if (std::abs(den[0]) < 1e-12 * poly_scale_of(den)) {
    throw AlgebraicLoop("instantaneous loop gain equals -1");
  }
  return TransferFunction(std::move(num), std::move(den), 0, g.sample_time);
}

}  // namespace rcis
