#include "qcert/ring.hpp"

#include "qcert/elementary.hpp"

namespace qcert {

RingElem::RingElem(const Rat& r) {
  if (r != 0) {
    terms_.emplace(Key{0, 0}, r);
  }
}

RingElem RingElem::monomial(const Rat& c, int pi_power, int sqrt3_power) {
  RingElem e;
  Rat coef = c;
  int j = sqrt3_power;
  // Fold even powers of sqrt3 into the rational part.
  while (j >= 2) {
    coef *= 3;
    j -= 2;
  }
  while (j < 0) {
    coef /= 3;
    j += 2;
  }
  e.add_term(Key{pi_power, j}, coef);
  return e;
}

void RingElem::add_term(const Key& k, const Rat& c) {
  if (c == 0) {
    return;
  }
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

Rat RingElem::coeff(int pi_power, int sqrt3_power) const {
  auto it = terms_.find(Key{pi_power, sqrt3_power});
  return it == terms_.end() ? Rat(0) : it->second;
}

bool RingElem::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

std::string RingElem::to_string() const {
  if (terms_.empty()) {
    return "0/1";
  }
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) {
      out += " + ";
    }
    first = false;
    out += qcert::to_string(c);
    if (k.first != 0) {
      out += " pi^" + std::to_string(k.first);
    }
    if (k.second != 0) {
      out += " sqrt3^" + std::to_string(k.second);
    }
  }
  return out;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  for (const auto& [k, c] : o.terms_) {
    add_term(k, c);
  }
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
  for (const auto& [k, c] : o.terms_) {
    add_term(k, -c);
  }
  return *this;
}

RingElem& RingElem::operator*=(const RingElem& o) { return *this = *this * o; }

RingElem operator*(const RingElem& a, const RingElem& b) {
  RingElem r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      int j = ka.second + kb.second;
      Rat c = ca * cb;
      if (j == 2) {
        c *= 3;
        j = 0;
      }
      r.add_term(RingElem::Key{ka.first + kb.first, j}, c);
    }
  }
  return r;
}

RingElem operator-(const RingElem& a) {
  RingElem r;
  for (const auto& [k, c] : a.terms_) {
    r.terms_.emplace(k, -c);
  }
  return r;
}

Interval ring_eval(const RingElem& e, int bits) {
  if (e.is_zero()) {
    return Interval(0);
  }
  int w = bits + 16;
  Interval pi = enclose_pi(w);
  Interval inv_pi = iv_div(Interval(1), pi, w);
  Interval s3 = enclose_sqrt(Interval(3), w);
  Interval sum(0);
  for (const auto& [k, c] : e.terms()) {
    Interval t = Interval::from_rat(c, w);
    if (k.first > 0) {
      t = iv_mul(t, iv_pow_int(pi, static_cast<unsigned long>(k.first), w), w);
    } else if (k.first < 0) {
      t = iv_mul(t, iv_pow_int(inv_pi, static_cast<unsigned long>(-k.first), w), w);
    }
    if (k.second == 1) {
      t = iv_mul(t, s3, w);
    }
    sum = iv_add(sum, t, w);
  }
  return iv_round(sum, bits);
}

}  // namespace qcert
