#ifndef LOGEULER_RANDOM_GEN_HPP
#define LOGEULER_RANDOM_GEN_HPP

#include <cstdint>

#include "logeuler/charclass.hpp"
#include "logeuler/chow.hpp"

namespace logeuler {

/// Deterministic splitmix64 stream for reproducible property checks.
/// Exact integers only; no floating point is involved anywhere.
class RandomGen {
public:
  explicit RandomGen(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi].
  long long range(long long lo, long long hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(next() % span);
  }

  Rational rational(long long max_num = 5, long long max_den = 3) {
    return frac(range(-max_num, max_num), range(1, max_den));
  }

  /// Random element of pure degree d (possibly zero).
  GradedElement pure_class(const ModelPtr& model, int d) {
    RawPoly raw;
    for (const auto& exp : model->monomials_of_degree(d)) raw.emplace_back(exp, rational());
    return model->normalize(raw);
  }

  /// Random element with a unit constant term.
  GradedElement unit(const ModelPtr& model) {
    RawPoly raw;
    for (int d = 1; d <= model->dimension(); ++d)
      for (const auto& exp : model->monomials_of_degree(d)) raw.emplace_back(exp, rational());
    GradedElement e = model->normalize(raw);
    Rational c = rational();
    if (c == 0) c = 1;
    return e + model->constant(c);
  }

  SheafClass sheaf(const ModelPtr& model) {
    SheafClass s;
    s.rank = Int(range(0, 3));
    for (int d = 1; d <= model->dimension(); ++d) s.chern.push_back(pure_class(model, d));
    return s;
  }

private:
  uint64_t state_;
};

}  // namespace logeuler

#endif
