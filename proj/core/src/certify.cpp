#include "qcert/certify.hpp"

#include "qcert/elementary.hpp"

#include <algorithm>
#include <map>

namespace qcert {

namespace {

constexpr int kEscalateAfter = 4;

Interval horner(const std::vector<Interval>& c, const Interval& x) {
  Interval acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Interval horner_derivative(const std::vector<Interval>& c, const Interval& x) {
  if (c.size() < 2) {
    return Interval(0);
  }
  Interval acc = c.back() * Interval(static_cast<long>(c.size() - 1));
  for (std::size_t k = c.size() - 2; k >= 1; --k) {
    acc = acc * x + c[k] * Interval(static_cast<long>(k));
  }
  return acc;
}

// The reduced polynomial p(x) / x^d at each precision.
class Reduced {
 public:
  Reduced(const IneqPoly& p, int d) : p_(p), d_(d) {}

  const std::vector<Interval>& at(int bits) {
    auto it = cache_.find(bits);
    if (it != cache_.end()) {
      return it->second;
    }
    const auto& full = p_.coefficients(bits);
    std::vector<Interval> r(full.begin() + d_, full.end());
    return cache_.emplace(bits, std::move(r)).first->second;
  }

 private:
  const IneqPoly& p_;
  int d_;
  std::map<int, std::vector<Interval>> cache_;
};

struct Node {
  Dyadic a;
  Dyadic b;
  int depth;
  int bits;
  int run;
};

}  // namespace

long n_of_x(const Dyadic& x) {
  if (x.sign() <= 0) {
    throw DomainError("n_of_x requires x > 0");
  }
  Rat inv = Rat(1) / (x * x).to_rat();
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  return c.get_si();
}

Dyadic x_of_n(long n, int bits) { return enclose_pow_half(Interval(n), -1, bits).hi(); }

Certificate certify_positive(const IneqPoly& p, const Dyadic& x0, const CertifyOptions& opt) {
  Certificate cert;
  cert.x_star = x0;
  cert.n_star = n_of_x(x0);
  cert.precision_bits = opt.bits;

  const auto& exact = p.exact();
  int d = 0;
  while (d < static_cast<int>(exact.size()) && exact[static_cast<std::size_t>(d)].is_zero()) {
    ++d;
  }
  cert.leading_zero_degree = d;
  if (d > p.degree()) {
    cert.note = "polynomial is identically zero";
    return cert;
  }
  Reduced red(p, d);

  // The reduced constant term must be certainly positive.
  int bits = opt.bits;
  while (!red.at(bits).front().positive()) {
    if (red.at(bits).front().negative() || bits * 2 > opt.max_bits) {
      cert.note = "leading coefficient is not positive";
      cert.precision_bits = bits;
      return cert;
    }
    bits *= 2;
  }
  cert.precision_bits = bits;

  // Quick refutation at the right end.
  {
    PrecisionGuard guard(bits);
    if (horner(red.at(bits), Interval(x0)).negative()) {
      cert.negative_point = true;
      cert.note = "negative at x0";
      return cert;
    }
  }

  std::vector<Node> stack{{Dyadic(), x0, 0, bits, 0}};
  while (!stack.empty()) {
    Node node = stack.back();
    stack.pop_back();
    ++cert.subdivisions;
    PrecisionGuard guard(node.bits);
    const auto& c = red.at(node.bits);
    Interval xs(node.a, node.b);
    Dyadic m = (node.a + node.b).ldexp(-1);
    Interval pm = horner(c, Interval(m));
    Interval direct = horner(c, xs);
    Interval mean = pm + horner_derivative(c, xs) * (xs - Interval(m));
    Interval value = intersect(direct, mean).value_or(direct);
    if (value.positive()) {
      continue;
    }
    if (pm.negative()) {
      cert.negative_point = true;
      cert.note = "negative at x = " + m.to_decimal(12, Round::Down);
      return cert;
    }
    if (node.depth >= opt.max_depth) {
      cert.max_depth_hit = true;
      cert.note = "max depth reached near x = " + m.to_decimal(12, Round::Down);
      return cert;
    }
    int next_bits = node.bits;
    int run = node.run + 1;
    if (run >= kEscalateAfter && pm.contains_zero() && next_bits * 2 <= opt.max_bits) {
      next_bits *= 2;
      run = 0;
      cert.precision_bits = std::max(cert.precision_bits, next_bits);
    }
    stack.push_back({m, node.b, node.depth + 1, next_bits, run});
    stack.push_back({node.a, m, node.depth + 1, next_bits, run});
  }
  cert.status = CertStatus::proved;
  return cert;
}

Crossover find_crossover(const IneqPoly& main, const std::vector<IneqPoly>& side,
                         const CertifyOptions& opt, long n_limit) {
  Crossover out;
  out.window_max = main.window_max();
  for (const auto& s : side) {
    out.window_max = std::max(out.window_max, s.window_max());
  }

  struct Attempt {
    bool ok = false;
    long subdivisions = 0;
    int bits = 0;
    int d = 0;
    std::vector<std::string> failed;
  };
  auto attempt = [&](long n) {
    Attempt a;
    Dyadic x = x_of_n(n, opt.bits);
    Certificate c = certify_positive(main, x, opt);
    a.subdivisions += c.subdivisions;
    a.bits = c.precision_bits;
    a.d = c.leading_zero_degree;
    if (c.status != CertStatus::proved) {
      a.failed.push_back(main.name());
      return a;
    }
    for (const auto& s : side) {
      Certificate sc = certify_positive(s, x, opt);
      a.subdivisions += sc.subdivisions;
      a.bits = std::max(a.bits, sc.precision_bits);
      if (sc.status != CertStatus::proved) {
        a.failed.push_back(s.name());
      }
    }
    a.ok = a.failed.empty();
    return a;
  };
  auto record = [&](long n, const Attempt& a) {
    out.n_star = n;
    out.subdivisions = a.subdivisions;
    out.precision_bits = a.bits;
    out.leading_zero_degree = a.d;
    out.failed = a.failed;
  };

  long lo = out.window_max;
  Attempt first = attempt(lo);
  if (first.ok) {
    out.status = CertStatus::proved;
    record(lo, first);
    out.within_window = true;
    return out;
  }
  // Shrink x geometrically (about 0.9 per step), then bisect on integer n.
  long hi = lo;
  Attempt good;
  for (;;) {
    hi = hi + std::max(1L, hi / 4);
    if (hi > n_limit) {
      record(lo, first);
      return out;
    }
    good = attempt(hi);
    if (good.ok) {
      break;
    }
    lo = hi;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    Attempt a = attempt(mid);
    if (a.ok) {
      hi = mid;
      good = std::move(a);
    } else {
      lo = mid;
    }
  }
  out.status = CertStatus::proved;
  record(hi, good);
  out.within_window = hi <= out.window_max;
  return out;
}

}  // namespace qcert
