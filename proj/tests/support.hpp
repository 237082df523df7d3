#pragma once

#include "qcert/bigint.hpp"
#include "qcert/interval.hpp"
#include "qcert/qtable.hpp"

#include <random>

namespace support {

inline constexpr long kTableMax = 20000;

// Shared q(0..20000), loaded from the test cache or built once.
inline const qcert::QTable& table() {
  static const qcert::QTable t = qcert::QTable::load_or_compute(kTableMax, qcert::default_cache_dir());
  return t;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234ULL);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

// Random rational with numerator in [-num, num] and denominator in [1, den].
inline qcert::Rat random_rat(long num, long den) {
  qcert::Rat r(uniform(-num, num), uniform(1, den));
  r.canonicalize();
  return r;
}

inline qcert::Rat ten_to(int k) {
  qcert::Rat p(qcert::pow(qcert::BigInt(10), static_cast<unsigned long>(k < 0 ? -k : k)));
  return k < 0 ? qcert::Rat(1) / p : p;
}

inline qcert::Rat dec(const char* text) { return qcert::parse_decimal(text); }

// True when the interval can hold a reference value known to within `radius` of `center`.
// Pair with a width check: this alone accepts any wide enough interval.
inline bool encloses(const qcert::Interval& iv, const qcert::Rat& center, const qcert::Rat& radius) {
  return iv.lo().to_rat() <= center + radius && center - radius <= iv.hi().to_rat();
}

// Both enclosures of the same real number must overlap.
inline bool overlaps(const qcert::Interval& a, const qcert::Interval& b) {
  return qcert::intersect(a, b).has_value();
}

}  // namespace support
