#include "qcert/qtable.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <system_error>

namespace qcert {

namespace fs = std::filesystem;

QTable QTable::compute(long n_max) {
  if (n_max < 0) {
    throw std::invalid_argument("QTable::compute: n_max must be >= 0");
  }
  auto size = static_cast<std::size_t>(n_max) + 1;
  std::vector<BigInt> v(size, BigInt(0));
  v[0] = 1;
  // Each part k is used at most once, so update from the top down.
  for (std::size_t k = 1; k < size; ++k) {
    for (std::size_t n = size - 1; n >= k; --n) {
      v[n] += v[n - k];
    }
  }
  return QTable(std::move(v));
}

const BigInt& QTable::at(long n) const {
  if (n < 0 || n > n_max()) {
    throw TableRangeError("q(" + std::to_string(n) + ") requested but table ends at " +
                          std::to_string(n_max()));
  }
  return values_[static_cast<std::size_t>(n)];
}

void QTable::save(const fs::path& file) const {
  if (file.has_parent_path()) {
    fs::create_directories(file.parent_path());
  }
  fs::path tmp = file;
  // Unique per writer so concurrent processes never share a partial file.
  tmp += ".tmp." + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw CacheError("cannot write " + tmp.string());
    }
    out << "qtable v1 " << n_max() << '\n';
    for (const auto& v : values_) {
      out << v.get_str(10) << '\n';
    }
    if (!out) {
      throw CacheError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, file);
}

QTable QTable::load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw CacheError("cannot open " + file.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw CacheError(file.string() + ": empty file");
  }
  std::istringstream header(line);
  std::string magic;
  std::string version;
  long n_max = -1;
  if (!(header >> magic >> version >> n_max) || magic != "qtable" || version != "v1" ||
      n_max < 0) {
    throw CacheError(file.string() + ": bad header '" + line + "'");
  }
  std::vector<BigInt> v;
  v.reserve(static_cast<std::size_t>(n_max) + 1);
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of("0123456789") != std::string::npos) {
      throw CacheError(file.string() + ": bad value on line " + std::to_string(v.size() + 2));
    }
    v.emplace_back(line, 10);
  }
  if (static_cast<long>(v.size()) != n_max + 1) {
    throw CacheError(file.string() + ": expected " + std::to_string(n_max + 1) +
                     " values, found " + std::to_string(v.size()));
  }
  // Spot checks: known small values and monotonicity.
  static const int kSmall[] = {1, 1, 1, 2, 2, 3, 4, 5, 6, 8};
  for (std::size_t i = 0; i < v.size() && i < 10; ++i) {
    if (v[i] != kSmall[i]) {
      throw CacheError(file.string() + ": q(" + std::to_string(i) + ") is wrong");
    }
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] || (i >= 5 && v[i] == v[i - 1])) {
      throw CacheError(file.string() + ": values not increasing at " + std::to_string(i));
    }
  }
  return QTable(std::move(v));
}

QTable QTable::load_or_compute(long n_max, const fs::path& dir) {
  fs::path file = dir / kCacheFileName;
  std::error_code ec;
  if (fs::exists(file, ec)) {
    QTable t = load(file);
    if (t.n_max() >= n_max) {
      if (t.n_max() == n_max) {
        return t;
      }
      std::vector<BigInt> v(t.values_.begin(), t.values_.begin() + n_max + 1);
      return QTable(std::move(v));
    }
  }
  QTable t = compute(n_max);
  try {
    t.save(file);
  } catch (const std::exception&) {
    // A read-only cache location is not fatal; the table is still valid.
  }
  return t;
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("QCERT_CACHE_DIR"); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return fs::path(xdg) / "qcert";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return fs::path(home) / ".cache" / "qcert";
  }
  return fs::temp_directory_path() / "qcert";
}

namespace {

// Number of partitions of n into distinct parts, all at most `largest`.
BigInt count_distinct(long n, long largest) {
  if (n == 0) {
    return 1;
  }
  BigInt total = 0;
  for (long part = std::min(n, largest); part >= 1; --part) {
    // The remaining parts are distinct and below `part`, so they sum to at most part(part-1)/2.
    if (part * (part + 1) / 2 < n) {
      break;
    }
    total += count_distinct(n - part, part - 1);
  }
  return total;
}

void check_range(const QTable& t, long lo, long hi, long reach) {
  if (lo < 1 || hi + reach > t.n_max()) {
    throw TableRangeError("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] exceeds table of size " + std::to_string(t.n_max()));
  }
}

}  // namespace

BigInt q_enumerate(long n) {
  if (n < 0 || n > 60) {
    throw std::out_of_range("q_enumerate supports 0 <= n <= 60, got " + std::to_string(n));
  }
  return count_distinct(n, n);
}

std::vector<long> check_log_concavity(const QTable& t, long lo, long hi) {
  check_range(t, lo, hi, 1);
  std::vector<long> bad;
  for (long n = lo; n <= hi; ++n) {
    if (t[n] * t[n] <= t[n - 1] * t[n + 1]) {
      bad.push_back(n);
    }
  }
  return bad;
}

std::vector<long> check_turan3(const QTable& t, long lo, long hi) {
  check_range(t, lo, hi, 2);
  std::vector<long> bad;
  for (long n = lo; n <= hi; ++n) {
    BigInt d0 = t[n] * t[n] - t[n - 1] * t[n + 1];
    BigInt d1 = t[n + 1] * t[n + 1] - t[n] * t[n + 2];
    BigInt c = t[n] * t[n + 1] - t[n - 1] * t[n + 2];
    if (!(4 * d0 * d1 > c * c)) {
      bad.push_back(n);
    }
  }
  return bad;
}

}  // namespace qcert
