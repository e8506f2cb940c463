#ifndef LOGEULER_SERIES_HPP
#define LOGEULER_SERIES_HPP

#include <vector>

#include "logeuler/rational.hpp"

namespace logeuler {

/// Dense univariate power series over the rationals, truncated at a
/// fixed order. coeffs[k] is the coefficient of x^k. Only the handful
/// of operations needed to derive multiplicative-sequence data are
/// provided.
namespace series {

using Series = std::vector<Rational>;

Series mul(const Series& a, const Series& b, size_t order);

/// Multiplicative inverse; requires a[0] != 0.
Series invert(const Series& a, size_t order);

/// log of a series with constant term 1.
Series log(const Series& a, size_t order);

/// exp of a series with constant term 0.
Series exp(const Series& a, size_t order);

/// Coefficients of x/(1 - e^{-x}) up to x^order: 1, 1/2, 1/12, 0, -1/720, ...
Series todd_root(size_t order);

/// Coefficients of log(x/(1 - e^{-x})) up to x^order.
Series todd_root_log(size_t order);

}  // namespace series
}  // namespace logeuler

#endif
