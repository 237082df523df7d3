#pragma once

#include "qcert/bigint.hpp"

#include <filesystem>
#include <stdexcept>
#include <vector>

namespace qcert {

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested index beyond the table.
class TableRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Exact values q(0..n_max) of the distinct partition function. Immutable once built.
class QTable {
 public:
  QTable() = default;

  static QTable compute(long n_max);
  static QTable load(const std::filesystem::path& file);
  // Loads `dir/qtable-v1.txt` if it covers n_max, otherwise builds and writes it.
  static QTable load_or_compute(long n_max, const std::filesystem::path& dir);

  void save(const std::filesystem::path& file) const;

  long n_max() const { return static_cast<long>(values_.size()) - 1; }
  // Throws TableRangeError outside [0, n_max].
  const BigInt& at(long n) const;
  const BigInt& operator[](long n) const { return values_[static_cast<std::size_t>(n)]; }
  const std::vector<BigInt>& values() const { return values_; }

 private:
  explicit QTable(std::vector<BigInt> v) : values_(std::move(v)) {}
  std::vector<BigInt> values_;
};

inline constexpr const char* kCacheFileName = "qtable-v1.txt";

// QCERT_CACHE_DIR if set, else $XDG_CACHE_HOME/qcert, else ~/.cache/qcert.
std::filesystem::path default_cache_dir();

// Counts strictly decreasing sequences summing to n by recursion. 0 <= n <= 60.
BigInt q_enumerate(long n);

// All n in [lo, hi] with q(n)^2 <= q(n-1) q(n+1).
std::vector<long> check_log_concavity(const QTable& t, long lo, long hi);
// All n in [lo, hi] where the strict third-order Turan inequality fails.
std::vector<long> check_turan3(const QTable& t, long lo, long hi);

}  // namespace qcert
