#pragma once

#include <complex>
#include <vector>

#include "rcis/poly.hpp"

namespace rcis {

// Rational discrete-time SISO system in the unit-delay variable, with an
// optional advance factor: G = z^{+preview} * num(q) / den(q), q = z^{-1}.
// den[0] is normalized to 1 on construction.
struct TransferFunction {
  Poly num{0.0};
  Poly den{1.0};
  int preview = 0;
  double sample_time = 1.0;

  TransferFunction() = default;
  TransferFunction(Poly numerator, Poly denominator, int preview_steps = 0,
                   double ts = 1.0);

  static TransferFunction constant(double c, double ts = 1.0);
  static TransferFunction delay(int steps, double ts = 1.0);

  // num[0] == 0 after normalization and no advance.
  bool is_strictly_proper() const;
};

enum class FrfSource { kModelDerived, kImported };

// Sampled complex response on a strictly increasing grid in [0, pi].
struct FrfData {
  std::vector<double> omegas;
  std::vector<Complex> values;
  FrfSource source = FrfSource::kModelDerived;

  FrfData() = default;
  FrfData(std::vector<double> w, std::vector<Complex> v,
          FrfSource src = FrfSource::kModelDerived);

  std::size_t size() const { return omegas.size(); }
};

struct PoleSet {
  std::vector<Complex> poles;
};

// Exact coefficient arithmetic; shared pure-delay factors are cancelled and
// near-zero trailing coefficients trimmed (1e-12 relative).
TransferFunction tf_add(const TransferFunction& a, const TransferFunction& b);
TransferFunction tf_sub(const TransferFunction& a, const TransferFunction& b);
TransferFunction tf_mul(const TransferFunction& a, const TransferFunction& b);
TransferFunction tf_scale(const TransferFunction& a, double c);

// Closed loop G H / (1 + G H). Throws AlgebraicLoop when the instantaneous
// loop gain makes the return difference singular at k = 0.
TransferFunction tf_feedback(const TransferFunction& g, const TransferFunction& h);

// 1 / (1 + G H).
TransferFunction tf_sensitivity(const TransferFunction& g, const TransferFunction& h);

}  // namespace rcis
