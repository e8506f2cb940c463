#include "logeuler/combinat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "logeuler/charclass.hpp"
#include "logeuler/chow.hpp"
#include "logeuler/series.hpp"

namespace logeuler {

MonomialType::MonomialType(const std::vector<unsigned>& entries) {
  for (unsigned e : entries)
    if (e != 0) parts.push_back(e);
  std::sort(parts.begin(), parts.end(), std::greater<unsigned>());
}

unsigned MonomialType::weight() const {
  unsigned w = 0;
  for (unsigned e : parts) w += e;
  return w;
}

std::string MonomialType::to_string() const {
  std::string out = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  if (parts.empty()) out += "0";
  return out + ")";
}

unsigned exponent_weight(const MonomialExponent& b) {
  unsigned w = 0;
  for (unsigned e : b) w += e;
  return w;
}

bool is_mf(const MonomialExponent& b) {
  return std::all_of(b.begin(), b.end(), [](unsigned e) { return e <= 1; });
}

MonomialExponent tilde(const MonomialExponent& b) {
  MonomialExponent out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = b[i] == 0 ? 0 : 1;
  return out;
}

MonomialExponent hat(const MonomialExponent& b) {
  MonomialExponent out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = b[i] == 1 ? 1 : 0;
  return out;
}

// ---------------------------------------------------------------------------
// delta

namespace {

std::mutex delta_mutex;
std::map<MonomialType, Rational> delta_cache;

Rational delta_uncached(const MonomialType& type) {
  if (type.parts.empty()) return 1;
  // Expand prod_i (sum_k t_k D_i^k) over one abstract degree-1 divisor
  // per part and read off the coefficient of D^b.
  const size_t count = type.parts.size();
  const unsigned weight = type.weight();
  std::vector<Generator> gens;
  for (size_t i = 0; i < count; ++i) gens.push_back({"D" + std::to_string(i + 1), 1});
  const ModelPtr model =
      ChowModel::create_free("delta-series", static_cast<int>(weight), gens);
  const series::Series root = series::todd_root(weight);
  GradedElement product = model->one();
  for (size_t i = 0; i < count; ++i) {
    const GradedElement d = model->generator_element(i);
    GradedElement factor = model->one();
    GradedElement power = model->one();
    for (unsigned k = 1; k <= weight; ++k) {
      power = power * d;
      if (power.is_zero()) break;
      if (root[k] != 0) factor = factor + power * root[k];
    }
    product = product * factor;
  }
  const Exponents target(type.parts.begin(), type.parts.end());
  auto it = product.terms().find(target);
  return it == product.terms().end() ? Rational(0) : it->second;
}

}  // namespace

Rational delta_constant(const MonomialType& type) {
  std::lock_guard<std::mutex> lock(delta_mutex);
  auto it = delta_cache.find(type);
  if (it != delta_cache.end()) return it->second;
  const Rational value = delta_uncached(type);
  delta_cache.emplace(type, value);
  return value;
}

Rational delta_constant(const MonomialExponent& b) {
  return delta_constant(MonomialType(b));
}

Rational delta_single(unsigned k) {
  std::vector<unsigned> parts;
  if (k > 0) parts.push_back(k);
  return delta_constant(MonomialType(std::move(parts)));
}

Rational delta_constant_via_q(const MonomialType& type) {
  if (type.parts.empty()) return 1;
  const size_t count = type.parts.size();
  const unsigned weight = type.weight();
  std::vector<Generator> gens;
  for (size_t i = 0; i < count; ++i) gens.push_back({"D" + std::to_string(i + 1), 1});
  const ModelPtr model = ChowModel::create_free("delta-q", static_cast<int>(weight), gens);
  std::vector<GradedElement> classes;
  for (size_t i = 0; i < count; ++i) classes.push_back(model->generator_element(i));
  std::vector<GradedElement> y;
  for (unsigned k = 1; k <= weight; ++k) y.push_back(elementary_symmetric(classes, k));
  const GradedElement todd = todd_series(y, model);
  const Exponents target(type.parts.begin(), type.parts.end());
  auto it = todd.terms().find(target);
  return it == todd.terms().end() ? Rational(0) : it->second;
}

// ---------------------------------------------------------------------------
// ordered factorizations and the signed count

namespace {

// Ordered set partitions of `elements` into nonempty blocks, emitted
// through `sink` as block lists (possibly zero blocks when empty).
void ordered_partitions(const std::vector<size_t>& elements,
                        std::vector<std::vector<size_t>>& prefix,
                        const std::function<void(const std::vector<std::vector<size_t>>&)>& sink) {
  if (elements.empty()) {
    sink(prefix);
    return;
  }
  const size_t m = elements.size();
  // Nonempty subsets as first block; the element of least index need
  // not be inside, so run over all 1..2^m-1 masks.
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    std::vector<size_t> first, rest;
    for (size_t i = 0; i < m; ++i)
      ((mask >> i) & 1 ? first : rest).push_back(elements[i]);
    prefix.push_back(std::move(first));
    ordered_partitions(rest, prefix, sink);
    prefix.pop_back();
  }
}

// S(n, k) = k S(n-1, k) + S(n-1, k-1)
Int stirling2(unsigned n, unsigned k) {
  static std::mutex mutex;
  static std::vector<std::vector<Int>> table{{Int(1)}};
  std::lock_guard<std::mutex> lock(mutex);
  while (table.size() <= n) {
    const size_t row = table.size();
    const std::vector<Int>& prev = table[row - 1];
    std::vector<Int> next(row + 1, Int(0));
    for (size_t j = 1; j <= row; ++j)
      next[j] = Int(j) * (j < prev.size() ? prev[j] : Int(0)) + prev[j - 1];
    table.push_back(std::move(next));
  }
  if (k >= table[n].size()) return 0;
  return table[n][k];
}

// Ordered set partitions of an r-element set into exactly j nonempty blocks.
Int ordered_partition_count(unsigned r, unsigned j) {
  Int f = 1;
  for (unsigned i = 2; i <= j; ++i) f *= i;
  return f * stirling2(r, j);
}

std::mutex signed_mutex;
std::map<MonomialType, Int> signed_cache;

}  // namespace

std::vector<std::vector<MonomialExponent>> ordered_factorizations(const MonomialExponent& b) {
  if (exponent_weight(b) == 0)
    throw input_error("ordered_factorizations needs |b| >= 1");
  std::vector<size_t> mf_indices, nmf_indices;
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 1) mf_indices.push_back(i);
    if (b[i] >= 2) nmf_indices.push_back(i);
  }
  std::vector<std::vector<MonomialExponent>> out;
  auto make_part = [&b](const std::vector<size_t>& indices) {
    MonomialExponent part(b.size(), 0);
    for (size_t i : indices) part[i] = b[i];
    return part;
  };
  // The last block absorbs every index of multiplicity >= 2 together
  // with an arbitrary subset of the multiplicity-one indices; the rest
  // form an ordered set partition of multiplicity-free blocks.
  const size_t m = mf_indices.size();
  for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
    std::vector<size_t> last = nmf_indices, rest;
    for (size_t i = 0; i < m; ++i)
      ((mask >> i) & 1 ? last : rest).push_back(mf_indices[i]);
    if (last.empty()) continue;
    std::vector<std::vector<size_t>> prefix;
    ordered_partitions(rest, prefix,
                       [&](const std::vector<std::vector<size_t>>& blocks) {
                         std::vector<MonomialExponent> tuple;
                         tuple.reserve(blocks.size() + 1);
                         for (const auto& block : blocks) tuple.push_back(make_part(block));
                         tuple.push_back(make_part(last));
                         out.push_back(std::move(tuple));
                       });
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b2) {
    if (a.size() != b2.size()) return a.size() < b2.size();
    return a < b2;
  });
  return out;
}

Int signed_count(const MonomialType& type) {
  if (type.weight() == 0) throw input_error("signed_count needs |b| >= 1");
  {
    std::lock_guard<std::mutex> lock(signed_mutex);
    auto it = signed_cache.find(type);
    if (it != signed_cache.end()) return it->second;
  }
  unsigned m = 0;  // multiplicity-one indices
  bool has_nmf = false;
  for (unsigned part : type.parts) {
    if (part == 1) ++m;
    if (part >= 2) has_nmf = true;
  }
  Int total = 0;
  for (unsigned k = 1; k <= m + 1; ++k) {
    Int count = 0;
    // Choose t multiplicity-one indices to ride along in the last
    // block, then order the remaining m - t into k - 1 blocks.
    const unsigned tmin = has_nmf ? 0 : 1;
    for (unsigned t = tmin; t <= m; ++t) {
      if (m - t < k - 1) continue;
      count += binomial(m, t) * ordered_partition_count(m - t, k - 1);
    }
    total += (k % 2 == 1) ? count : -count;
  }
  std::lock_guard<std::mutex> lock(signed_mutex);
  signed_cache.emplace(type, total);
  return total;
}

Int signed_count(const MonomialExponent& b) { return signed_count(MonomialType(b)); }

Int signed_count_enumerated(const MonomialExponent& b) {
  Int total = 0;
  for (const auto& tuple : ordered_factorizations(b))
    total += (tuple.size() % 2 == 1) ? 1 : -1;
  return total;
}

Rational lambda_constant(const MonomialExponent& b) {
  if (exponent_weight(b) == 0) return -1;  // empty-tuple k = 0 convention
  Rational total(0);
  for (const auto& tuple : ordered_factorizations(b)) {
    Rational product(1);
    for (const auto& part : tuple) product *= delta_constant(part);
    total += (tuple.size() % 2 == 1) ? product : -product;
  }
  return total;
}

std::vector<MonomialExponent> enumerate_exponents(size_t length, unsigned max_total) {
  std::vector<MonomialExponent> out;
  MonomialExponent current(length, 0);
  auto recurse = [&](auto&& self, size_t i, unsigned remaining) -> void {
    if (i == length) {
      if (remaining < max_total) out.push_back(current);
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      current[i] = k;
      self(self, i + 1, remaining - k);
    }
    current[i] = 0;
  };
  // remaining tracks max_total - total so far; keep tuples with total in 1..max_total.
  recurse(recurse, 0, max_total);
  std::sort(out.begin(), out.end(), [](const MonomialExponent& a, const MonomialExponent& b) {
    const unsigned wa = exponent_weight(a), wb = exponent_weight(b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return out;
}

std::vector<MonomialType> enumerate_types(unsigned max_weight) {
  std::vector<MonomialType> out;
  std::vector<unsigned> current;
  auto recurse = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
    if (!current.empty()) out.push_back(MonomialType(current));
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  recurse(recurse, max_weight, max_weight);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MonomialExponent parse_exponent(const std::string& text) {
  MonomialExponent out;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) throw input_error("bad exponent list '" + text + "'");
    out.push_back(static_cast<unsigned>(std::stoul(token)));
    token.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw input_error("bad exponent list '" + text + "'");
      token.push_back(c);
    }
  }
  flush();
  return out;
}

std::string exponent_to_string(const MonomialExponent& b) {
  std::string out;
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(b[i]);
  }
  return out;
}

}  // namespace logeuler
