#include "qcert/form.hpp"

#include "qcert/elementary.hpp"

#include <algorithm>

namespace qcert {

namespace {

using RingPoly = std::vector<RingElem>;
using IvPoly = std::vector<Interval>;

// Product truncated to degrees <= max_degree.
RingPoly mul_truncated(const RingPoly& a, const RingPoly& b, long max_degree) {
  long da = static_cast<long>(a.size()) - 1;
  long db = static_cast<long>(b.size()) - 1;
  long top = std::min(da + db, max_degree);
  RingPoly r(static_cast<std::size_t>(std::max(top + 1, 0L)));
  for (long i = 0; i <= std::min(da, top); ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) {
      continue;
    }
    for (long j = 0; j <= std::min(db, top - i); ++j) {
      r[static_cast<std::size_t>(i + j)] +=
          a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return r;
}

IvPoly mul_full(const IvPoly& a, const IvPoly& b) {
  IvPoly r(a.size() + b.size() - 1, Interval(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

}  // namespace

Form::Form(const RingElem& c) {
  add(Monomial{}, c);
}

Form Form::L(long s) {
  Form f;
  f.add(Monomial{0, {BoundRef{s, Side::lower}}}, RingElem(1));
  return f;
}

Form Form::U(long s) {
  Form f;
  f.add(Monomial{0, {BoundRef{s, Side::upper}}}, RingElem(1));
  return f;
}

Form Form::X(int k) {
  Form f;
  f.add(Monomial{k, {}}, RingElem(1));
  return f;
}

void Form::add(const Monomial& m, const RingElem& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

std::set<long> Form::shifts() const {
  std::set<long> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors) {
      out.insert(f.s);
    }
  }
  return out;
}

int Form::homogeneous_degree() const {
  int deg = -2;
  for (const auto& [m, c] : terms_) {
    int k = static_cast<int>(m.factors.size());
    if (deg == -2) {
      deg = k;
    } else if (deg != k) {
      return -1;
    }
  }
  return deg == -2 ? 0 : deg;
}

Form& Form::operator+=(const Form& o) {
  for (const auto& [m, c] : o.terms_) {
    add(m, c);
  }
  return *this;
}

Form& Form::operator-=(const Form& o) {
  for (const auto& [m, c] : o.terms_) {
    add(m, -c);
  }
  return *this;
}

Form operator*(const Form& a, const Form& b) {
  Form r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Form::Monomial m;
      m.x_power = ma.x_power + mb.x_power;
      m.factors = ma.factors;
      m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
      std::sort(m.factors.begin(), m.factors.end());
      r.add(m, ca * cb);
    }
  }
  return r;
}

Form operator-(const Form& a) {
  Form r;
  for (const auto& [m, c] : a.terms_) {
    r.add(m, -c);
  }
  return r;
}

IneqPoly::IneqPoly(std::string name, Form form, long N, int bits)
    : name_(std::move(name)), form_(std::move(form)), N_(N), bits_(bits) {
  for (long s : form_.shifts()) {
    for (Side side : {Side::lower, Side::upper}) {
      bounds_.emplace(BoundRef{s, side}, bound_poly(s, N, side, bits));
    }
    window_max_ = std::max(window_max_, er_budget(N, s, bits).n_min);
  }
  if (window_max_ == 0) {
    window_max_ = n_min(N, 0, bits);
  }
  x0_ = enclose_pow_half(Interval(window_max_), -1, bits).hi();

  exact_.assign(static_cast<std::size_t>(N + 1), RingElem());
  for (const auto& [m, c] : form_.terms()) {
    long k = static_cast<long>(m.factors.size());
    degree_ = std::max(degree_, m.x_power + (k == 0 ? 0 : k * (N + 1)));
    if (m.x_power > N) {
      continue;
    }
    long room = N - m.x_power;
    RingPoly prod{RingElem(1)};
    for (const auto& f : m.factors) {
      prod = mul_truncated(prod, bounds_.at(f).coeffs, room);
    }
    for (std::size_t j = 0; j < prod.size(); ++j) {
      exact_[static_cast<std::size_t>(m.x_power) + j] += c * prod[j];
    }
  }
}

const std::vector<Interval>& IneqPoly::coefficients(int bits) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->enclosures.find(bits);
  if (it != cache_->enclosures.end()) {
    return it->second;
  }
  PrecisionGuard guard(bits);
  std::map<BoundRef, IvPoly> ev;
  for (const auto& [ref, bp] : bounds_) {
    IvPoly p;
    for (const auto& c : bp.coeffs) {
      p.push_back(ring_eval(c, bits));
    }
    p.emplace_back(bp.err);
    ev.emplace(ref, std::move(p));
  }
  IvPoly total(static_cast<std::size_t>(degree_ + 1), Interval(0));
  for (const auto& [m, c] : form_.terms()) {
    IvPoly prod{ring_eval(c, bits)};
    for (const auto& f : m.factors) {
      prod = mul_full(prod, ev.at(f));
    }
    for (std::size_t j = 0; j < prod.size(); ++j) {
      total[static_cast<std::size_t>(m.x_power) + j] += prod[j];
    }
  }
  for (long k = 0; k <= N_ && k <= degree_; ++k) {
    total[static_cast<std::size_t>(k)] = ring_eval(exact_[static_cast<std::size_t>(k)], bits);
  }
  return cache_->enclosures.emplace(bits, std::move(total)).first->second;
}

Interval IneqPoly::eval_unexpanded(const Interval& x, int bits) const {
  PrecisionGuard guard(bits);
  std::map<BoundRef, Interval> value;
  for (const auto& [ref, bp] : bounds_) {
    Interval acc(bp.err);
    for (auto c = bp.coeffs.rbegin(); c != bp.coeffs.rend(); ++c) {
      acc = acc * x + ring_eval(*c, bits);
    }
    value.emplace(ref, acc);
  }
  Interval sum(0);
  for (const auto& [m, c] : form_.terms()) {
    Interval t = ring_eval(c, bits) * iv_pow_int(x, static_cast<unsigned long>(m.x_power), bits);
    for (const auto& f : m.factors) {
      t = t * value.at(f);
    }
    sum += t;
  }
  return sum;
}

}  // namespace qcert
