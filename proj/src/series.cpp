#include "logeuler/series.hpp"

namespace logeuler {
namespace series {

Series mul(const Series& a, const Series& b, size_t order) {
  Series out(order + 1, Rational(0));
  for (size_t i = 0; i <= order && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j <= order && j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Series invert(const Series& a, size_t order) {
  if (a.empty() || a[0] == 0) throw math_error("series inverse needs a unit constant term");
  Series out(order + 1, Rational(0));
  out[0] = Rational(1) / a[0];
  for (size_t k = 1; k <= order; ++k) {
    Rational acc(0);
    for (size_t j = 1; j <= k; ++j) {
      const Rational aj = j < a.size() ? a[j] : Rational(0);
      if (aj != 0) acc += aj * out[k - j];
    }
    out[k] = -acc / a[0];
  }
  return out;
}

Series log(const Series& a, size_t order) {
  if (a.empty() || a[0] != 1) throw math_error("series log needs constant term 1");
  // (log a)' = a'/a, integrated term by term.
  const Series ainv = invert(a, order);
  Series deriv(order + 1, Rational(0));
  for (size_t k = 0; k + 1 < a.size() && k <= order; ++k)
    deriv[k] = a[k + 1] * Rational(static_cast<long long>(k + 1));
  const Series q = mul(deriv, ainv, order);
  Series out(order + 1, Rational(0));
  for (size_t k = 1; k <= order; ++k)
    out[k] = q[k - 1] / Rational(static_cast<long long>(k));
  return out;
}

Series exp(const Series& a, size_t order) {
  if (!a.empty() && a[0] != 0) throw math_error("series exp needs constant term 0");
  // e' = a' e, solved coefficient by coefficient.
  Series out(order + 1, Rational(0));
  out[0] = 1;
  for (size_t k = 1; k <= order; ++k) {
    Rational acc(0);
    for (size_t j = 1; j <= k; ++j) {
      const Rational aj = j < a.size() ? a[j] : Rational(0);
      if (aj != 0) acc += Rational(static_cast<long long>(j)) * aj * out[k - j];
    }
    out[k] = acc / Rational(static_cast<long long>(k));
  }
  return out;
}

Series todd_root(size_t order) {
  // (1 - e^{-x})/x = sum_k (-1)^k x^k/(k+1)!, then invert.
  Series f(order + 1, Rational(0));
  Rational factorial(1);
  for (size_t k = 0; k <= order; ++k) {
    factorial *= Rational(static_cast<long long>(k + 1));
    f[k] = frac(k % 2 == 0 ? 1 : -1, 1) / factorial;
  }
  return invert(f, order);
}

Series todd_root_log(size_t order) { return log(todd_root(order), order); }

}  // namespace series
}  // namespace logeuler
