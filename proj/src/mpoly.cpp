#include "theme/mpoly.hpp"

#include <algorithm>

#include "theme/errors.hpp"

namespace theme {

namespace {

void trim(MPoly::Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

MPoly MPoly::var(int i) {
  MPoly p;
  Monomial m(i + 1, 0);
  m[i] = 1;
  p.terms_[m] = 1;
  return p;
}

void MPoly::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  trim(m);
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MPoly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int MPoly::num_vars() const {
  int n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, static_cast<int>(m.size()));
  return n;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator-() const { return *this * Rational(-1); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(std::max(m1.size(), m2.size()), 0);
      for (std::size_t i = 0; i < m1.size(); ++i) m[i] += m1[i];
      for (std::size_t i = 0; i < m2.size(); ++i) m[i] += m2[i];
      r.add_term(m, c1 * c2);
    }
  return r;
}

MPoly MPoly::operator*(const Rational& s) const {
  MPoly r;
  if (s == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
  return r;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
  Rational r = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= point.size()) throw Error(ErrorCode::InvalidInput, "point has too few coordinates");
      for (int e = 0; e < m[i]; ++e) t *= point[i];
    }
    r += t;
  }
  return r;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    Rational a = abs(c);
    std::string term;
    if (mono.empty()) term = to_string(a);
    else if (a == 1) term = mono;
    else term = (is_integer(a) ? to_string(a) : "(" + to_string(a) + ")") + "*" + mono;
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace theme
