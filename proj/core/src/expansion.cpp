#include "qcert/expansion.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace qcert {

namespace {

enum class Family { B, Bbar, Chat, Bhat };

class Memo {
 public:
  using Key = std::tuple<Family, long, long>;

  template <typename F>
  RingElem get(Family f, long index, long s, F compute) {
    Key key{f, index, s};
    {
      std::shared_lock lock(mu_);
      auto it = table_.find(key);
      if (it != table_.end()) {
        return it->second;
      }
    }
    // Computed outside the lock; concurrent inserts of the same key agree.
    RingElem v = compute();
    std::unique_lock lock(mu_);
    table_.emplace(key, v);
    return v;
  }

 private:
  std::shared_mutex mu_;
  std::map<Key, RingElem> table_;
};

Memo& memo() {
  static Memo m;
  return m;
}

void require_nonnegative(long v, const char* what) {
  if (v < 0) {
    throw std::invalid_argument(std::string(what) + " must be >= 0");
  }
}

// pi^(2l) (sigma/3)^l as a ring element.
RingElem pi_sigma_power(long l, const Rat& sigma) {
  return RingElem::monomial(pow(Rat(sigma / 3), l), static_cast<int>(2 * l), 0);
}

}  // namespace

CoeffContext::CoeffContext(long shift) : s(shift), sigma(make_rat(24 * shift + 1, 24)) {
  require_nonnegative(shift, "shift s");
}

Rat rising_factorial(const Rat& x, long m) {
  require_nonnegative(m, "rising_factorial order");
  Rat r = 1;
  for (long i = 0; i < m; ++i) {
    r *= x + i;
  }
  return r;
}

Rat gen_binomial(const Rat& x, long m) {
  require_nonnegative(m, "gen_binomial order");
  Rat r = 1;
  for (long i = 0; i < m; ++i) {
    r *= x - i;
  }
  r /= Rat(factorial(static_cast<unsigned long>(m)));
  return r;
}

Rat a_coeff(long m) {
  require_nonnegative(m, "a_coeff index");
  Rat r = gen_binomial(make_rat(1, 2), m) * rising_factorial(make_rat(3, 2), m);
  r /= Rat(pow(BigInt(2), static_cast<unsigned long>(m)));
  return r;
}

Rat binomial_sum_rhs(long r, long m) {
  if (r < 0 || m < 0 || !(r < 2 * m || (r == 0 && m == 0))) {
    throw std::invalid_argument("binomial_sum_rhs requires 0 <= r < 2m or r = m = 0");
  }
  if (r == 0 && m == 0) {
    return 1;
  }
  if (m < r) {
    return 0;
  }
  Rat v(BigInt(r) * pow(BigInt(2), static_cast<unsigned long>(r)),
        BigInt(m) * pow(BigInt(2), static_cast<unsigned long>(2 * m)));
  v.canonicalize();
  v *= Rat(binomial(static_cast<unsigned long>(2 * m - r - 1), static_cast<unsigned long>(m - r)));
  return m % 2 == 0 ? v : Rat(-v);
}

Rat binomial_sum_lhs(long r, long m) {
  require_nonnegative(r, "r");
  require_nonnegative(m, "m");
  Rat sum = 0;
  for (long s = 0; s <= r; ++s) {
    Rat term = Rat(binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(s))) *
               gen_binomial(make_rat(s, 2), m);
    sum += (s % 2 == 0) ? term : Rat(-term);
  }
  return sum;
}

RingElem B_coeff(long k, const CoeffContext& ctx) {
  require_nonnegative(k, "B_coeff index");
  if (k == 0) {
    return RingElem(1);
  }
  return memo().get(Family::B, k, ctx.s, [&] {
    const Rat& sigma = ctx.sigma;
    long h = k / 2;
    RingElem sum;
    if (k % 2 == 0) {
      for (long l = 1; l <= h; ++l) {
        Rat c = rising_factorial(Rat(-h), l) /
                Rat(factorial(static_cast<unsigned long>(h + l)) *
                    factorial(static_cast<unsigned long>(2 * l - 1)));
        sum += RingElem(c) * pi_sigma_power(l, sigma);
      }
      Rat outer = pow(sigma, h) * rising_factorial(make_rat(1, 2) - h, h + 1) / h;
      return RingElem(outer) * sum;
    }
    for (long l = 0; l <= h; ++l) {
      Rat c = rising_factorial(Rat(-h), l) /
              Rat(factorial(static_cast<unsigned long>(l + h + 1)) *
                  factorial(static_cast<unsigned long>(2 * l)));
      sum += RingElem(c) * pi_sigma_power(l, sigma);
    }
    Rat outer = pow(sigma, h + 1) * rising_factorial(make_rat(1, 2) - h, h + 1);
    // pi / sqrt3 = (1/3) pi sqrt3.
    return RingElem::monomial(outer / 3, 1, 1) * sum;
  });
}

Rat Abar_coeff(long l, const CoeffContext& ctx) {
  require_nonnegative(l, "Abar_coeff index");
  if (l % 2 != 0) {
    return 0;
  }
  return pow(ctx.sigma, l / 2) * gen_binomial(make_rat(-3, 4), l / 2);
}

RingElem Bbar_coeff(long k, const CoeffContext& ctx) {
  require_nonnegative(k, "Bbar_coeff index");
  return memo().get(Family::Bbar, k, ctx.s, [&] {
    RingElem sum;
    for (long l = 0; l <= k; ++l) {
      Rat a = Abar_coeff(k - l, ctx);
      if (a != 0) {
        sum += B_coeff(l, ctx) * RingElem(a);
      }
    }
    return sum;
  });
}

RingElem Chat_coeff(long m, const CoeffContext& ctx) {
  require_nonnegative(m, "Chat_coeff index");
  return memo().get(Family::Chat, m, ctx.s, [&] {
    const Rat& sigma = ctx.sigma;
    long l = m / 2;
    RingElem sum;
    for (long k = 0; k <= l; ++k) {
      Rat three_k(pow(BigInt(3), static_cast<unsigned long>(k)));
      Rat sig = pow(sigma, l - k);
      if (m % 2 == 0) {
        Rat c = gen_binomial(Rat(-k), l - k) * a_coeff(2 * k) * three_k * sig;
        sum += RingElem::monomial(c, static_cast<int>(-2 * k), 0);
      } else {
        Rat c = gen_binomial(make_rat(-(2 * k + 1), 2), l - k) * a_coeff(2 * k + 1) * three_k * sig;
        sum -= RingElem::monomial(c, static_cast<int>(-(2 * k + 1)), 1);
      }
    }
    return sum;
  });
}

RingElem Bhat_coeff(long m, const CoeffContext& ctx) {
  require_nonnegative(m, "Bhat_coeff index");
  return memo().get(Family::Bhat, m, ctx.s, [&] {
    RingElem sum;
    for (long k = 0; k <= m; ++k) {
      sum += Bbar_coeff(k, ctx) * Chat_coeff(m - k, ctx);
    }
    return sum;
  });
}

RingElem coeff_by_name(const std::string& family, long index, long s) {
  CoeffContext ctx(s);
  if (family == "a") {
    return RingElem(a_coeff(index));
  }
  if (family == "B") {
    return B_coeff(index, ctx);
  }
  if (family == "Abar") {
    return RingElem(Abar_coeff(index, ctx));
  }
  if (family == "Bbar") {
    return Bbar_coeff(index, ctx);
  }
  if (family == "Chat") {
    return Chat_coeff(index, ctx);
  }
  if (family == "Bhat") {
    return Bhat_coeff(index, ctx);
  }
  throw std::invalid_argument("unknown coefficient family '" + family + "'");
}

}  // namespace qcert
