// Small exact polynomial helpers: sparse multivariate over Q, dense
// univariate over Z.  Sizes here are tiny; clarity over speed.
#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cimel/matrix.hpp"

namespace cim {

struct MPoly {
  // exponent vector -> coefficient; zero coefficients are never stored
  std::map<std::vector<int>, Rat> terms;
  std::size_t nvars = 0;

  static MPoly constant(std::size_t nv, const Rat& c) {
    MPoly p;
    p.nvars = nv;
    if (c != 0) p.terms[std::vector<int>(nv, 0)] = c;
    return p;
  }
  static MPoly variable(std::size_t nv, std::size_t i, const Rat& c = Rat(1)) {
    MPoly p;
    p.nvars = nv;
    std::vector<int> e(nv, 0);
    e[i] = 1;
    if (c != 0) p.terms[e] = c;
    return p;
  }

  MPoly& operator+=(const MPoly& o) {
    for (auto& [e, c] : o.terms) {
      auto it = terms.find(e);
      if (it == terms.end())
        terms[e] = c;
      else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
      }
    }
    return *this;
  }
  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    r += o;
    return r;
  }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }
  MPoly operator*(const MPoly& o) const {
    MPoly r;
    r.nvars = nvars;
    for (auto& [e1, c1] : terms)
      for (auto& [e2, c2] : o.terms) {
        std::vector<int> e(nvars);
        for (std::size_t i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
        auto it = r.terms.find(e);
        if (it == r.terms.end())
          r.terms[e] = c1 * c2;
        else {
          it->second += c1 * c2;
          if (it->second == 0) r.terms.erase(it);
        }
      }
    return r;
  }
  MPoly pow(long n) const {
    MPoly r = constant(nvars, Rat(1));
    for (long i = 0; i < n; ++i) r = r * *this;
    return r;
  }
  bool operator==(const MPoly& o) const { return terms == o.terms; }
  bool is_zero() const { return terms.empty(); }

  std::string str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const Rat& c = it->second;
      if (!first && c > 0) os << " + ";
      if (c < 0) os << (first ? "-" : " - ");
      Rat ac = abs(c);
      bool unit = (ac == 1);
      bool any = false;
      if (!unit) {
        os << to_string(ac);
        any = true;
      }
      for (std::size_t i = 0; i < nvars; ++i) {
        int e = it->first[i];
        if (e == 0) continue;
        if (any) os << "*";
        os << names[i];
        if (e != 1) os << "^" << e;
        any = true;
      }
      if (!any) os << to_string(ac);
      first = false;
    }
    return os.str();
  }
};

// Dense univariate polynomial over Z, coefficient of degree i at index i.
struct UPoly {
  std::vector<Int> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  static UPoly one() { return UPoly{{Int(1)}}; }
  // 1 - x^e
  static UPoly cyclo_like(long e) {
    UPoly p;
    p.c.assign(std::size_t(e) + 1, Int(0));
    p.c[0] = 1;
    p.c[std::size_t(e)] = -1;
    return p;
  }
  UPoly operator*(const UPoly& o) const {
    if (c.empty() || o.c.empty()) return UPoly{};
    UPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
  }
  bool operator==(const UPoly& o) const { return c == o.c; }

  std::string str(const std::string& var) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (!first) os << (c[i] > 0 ? " + " : " - ");
      else if (c[i] < 0) os << "-";
      Int a = abs(c[i]);
      if (a != 1 || i == 0) os << to_string(a);
      if (i >= 1) {
        if (a != 1) os << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    return os.str();
  }
};

// Formal product of (1 - x^e) factors split into numerator and denominator;
// equality is tested by cross-multiplied expansion, so cancellation needs no
// explicit division.
struct CycloFraction {
  std::vector<long> num, den;  // multisets of exponents e, each factor 1-x^e

  UPoly expand_num() const {
    UPoly p = UPoly::one();
    for (long e : num) p = p * UPoly::cyclo_like(e);
    return p;
  }
  UPoly expand_den() const {
    UPoly p = UPoly::one();
    for (long e : den) p = p * UPoly::cyclo_like(e);
    return p;
  }
};

inline bool cyclo_equal(const CycloFraction& a, const CycloFraction& b) {
  return a.expand_num() * b.expand_den() == b.expand_num() * a.expand_den();
}

inline std::string to_string(const CycloFraction& f, const std::string& var = "t") {
  auto side = [&](const std::vector<long>& v) {
    if (v.empty()) return std::string("1");
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << "*";
      os << "(1-" << var << "^" << v[i] << ")";
    }
    return os.str();
  };
  return side(f.num) + " / " + side(f.den);
}

}  // namespace cim
