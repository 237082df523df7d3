#pragma once

#include "qcert/error_budget.hpp"
#include "qcert/interval.hpp"
#include "qcert/ring.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace qcert {

// One factor L(n,s,N) or U(n,s,N) of a product.
struct BoundRef {
  long s = 0;
  Side side = Side::lower;
  friend auto operator<=>(const BoundRef&, const BoundRef&) = default;
};

// Polynomial in the bound symbols L_s, U_s and x = n^{-1/2} with ring coefficients.
class Form {
 public:
  struct Monomial {
    int x_power = 0;
    std::vector<BoundRef> factors;  // sorted
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
  };

  Form() = default;
  Form(const RingElem& c);  // NOLINT(google-explicit-constructor)
  Form(long c) : Form(RingElem(c)) {}  // NOLINT(google-explicit-constructor)

  static Form L(long s);
  static Form U(long s);
  static Form X(int k);

  const std::map<Monomial, RingElem>& terms() const { return terms_; }
  std::set<long> shifts() const;
  // Number of bound factors per monomial if all agree, else -1.
  int homogeneous_degree() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Form& a, const Form& b);
  friend Form operator-(const Form& a);

 private:
  void add(const Monomial& m, const RingElem& c);
  std::map<Monomial, RingElem> terms_;
};

// A form expanded into a polynomial in x for fixed truncation order N.
// Degrees 0..N are exact ring elements; the full enclosure (all degrees)
// is built on demand per precision.
class IneqPoly {
 public:
  IneqPoly(std::string name, Form form, long N, int bits);

  const std::string& name() const { return name_; }
  const Form& form() const { return form_; }
  long N() const { return N_; }
  long degree() const { return degree_; }
  const std::vector<RingElem>& exact() const { return exact_; }
  // max over the shifts involved of n_min(N, s), and its x = n^{-1/2} rounded up.
  long window_max() const { return window_max_; }
  const Dyadic& x0() const { return x0_; }

  // Enclosures of every coefficient; degrees <= N come from the exact part.
  const std::vector<Interval>& coefficients(int bits) const;

  // Enclosure of the unexpanded form at a point x, each bound factor evaluated separately.
  Interval eval_unexpanded(const Interval& x, int bits) const;

 private:
  std::string name_;
  Form form_;
  long N_;
  int bits_;
  long degree_ = 0;
  long window_max_ = 0;
  Dyadic x0_;
  std::map<BoundRef, BoundPoly> bounds_;
  std::vector<RingElem> exact_;
  struct Cache {
    std::mutex mu;
    std::map<int, std::vector<Interval>> enclosures;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace qcert
