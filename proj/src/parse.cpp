#include "theme/parse.hpp"

#include <cctype>
#include <map>

#include "theme/errors.hpp"

namespace theme {

const char* const kSConvention =
    "s^(lambda-1+m) * log(s)^j/j! := a^m e_{lambda,j} with a acting as multiplication by s; "
    "for j = 0 this is lambda(lambda+1)...(lambda+m-1) b^m e_{lambda,0}, i.e. "
    "s^(lambda+m-1)/(lambda+m-1) = [lambda...(lambda+m-2)] b^m s^(lambda-1)";

namespace {

PSeries ps_trim(PSeries s) {
  while (!s.empty() && s.back().is_zero()) s.pop_back();
  return s;
}

PSeries ps_add(const PSeries& x, const PSeries& y, int sign = 1) {
  PSeries r(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = r[i] + x[i];
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = sign > 0 ? r[i] + y[i] : r[i] - y[i];
  return ps_trim(r);
}

PSeries ps_mul(const PSeries& x, const PSeries& y) {
  if (x.empty() || y.empty()) return {};
  PSeries r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = r[i + j] + x[i] * y[j];
  return ps_trim(r);
}

PSeries ps_const(const Rational& c) { return ps_trim({MPoly(c)}); }

bool ps_is_constant_scalar(const PSeries& s, Rational& value) {
  if (s.empty()) {
    value = 0;
    return true;
  }
  if (s.size() != 1 || !s[0].is_constant()) return false;
  value = s[0].constant_term();
  return true;
}

class Parser {
 public:
  Parser(const std::string& text, std::vector<std::string>* vars, bool allow_new)
      : t_(text), vars_(vars), allow_new_(allow_new) {}

  std::size_t pos() const { return p_; }
  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  bool at_end() {
    skip();
    return p_ >= t_.size();
  }
  char peek() {
    skip();
    return p_ < t_.size() ? t_[p_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++p_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    skip();
    if (t_.compare(p_, w.size(), w) != 0) return false;
    std::size_t e = p_ + w.size();
    if (e < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[e])) || t_[e] == '_'))
      return false;
    p_ = e;
    return true;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("expected '" + w + "'");
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, p_); }

  long integer() {
    skip();
    std::size_t s = p_;
    while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
    if (s == p_) fail("expected an integer");
    return std::stol(t_.substr(s, p_ - s));
  }

  // [-] int [/ int]
  Rational rational() {
    bool neg = accept('-');
    Rational r = integer();
    std::size_t save = p_;
    if (accept('/')) {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        p_ = save;
      } else {
        long d = integer();
        if (d == 0) fail("zero denominator");
        r /= d;
      }
    }
    return neg ? Rational(-r) : r;
  }

  std::string ident() {
    skip();
    std::size_t s = p_;
    if (p_ < t_.size() && (std::isalpha(static_cast<unsigned char>(t_[p_])) || t_[p_] == '_')) {
      ++p_;
      while (p_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[p_])) || t_[p_] == '_'))
        ++p_;
    }
    if (s == p_) fail("expected a symbol");
    return t_.substr(s, p_ - s);
  }

  PSeries expr() {
    PSeries acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (accept('-')) sign = -1;
      else if (!first && !accept('+')) break;
      else if (first) accept('+');
      acc = ps_add(acc, term(), sign);
      first = false;
      char c = peek();
      if (c != '+' && c != '-') break;
    }
    return acc;
  }

  PSeries term() {
    PSeries acc = power();
    while (true) {
      if (accept('*')) {
        acc = ps_mul(acc, power());
      } else if (peek() == '/') {
        std::size_t at = p_;
        ++p_;
        Rational d;
        if (!ps_is_constant_scalar(power(), d) || d == 0) {
          p_ = at;
          fail("division only by a nonzero rational");
        }
        acc = ps_mul(acc, ps_const(1 / d));
      } else {
        break;
      }
    }
    return acc;
  }

  PSeries power() {
    PSeries base = atom();
    if (accept('^')) {
      long e = integer();
      PSeries r = ps_const(1);
      for (long i = 0; i < e; ++i) r = ps_mul(r, base);
      return r;
    }
    return base;
  }

  PSeries atom() {
    char c = peek();
    if (c == '(') {
      ++p_;
      PSeries e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ps_const(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = p_;
      std::string id = ident();
      if (id == "b") return ps_trim({MPoly(), MPoly(Rational(1))});
      if (!vars_) {
        p_ = at;
        fail("unknown symbol '" + id + "'");
      }
      for (std::size_t i = 0; i < vars_->size(); ++i)
        if ((*vars_)[i] == id) return {MPoly::var(static_cast<int>(i))};
      if (!allow_new_ || id == "s" || id == "a" || id == "log" || id == "inv") {
        p_ = at;
        fail("unknown symbol '" + id + "'");
      }
      vars_->push_back(id);
      return {MPoly::var(static_cast<int>(vars_->size()) - 1)};
    }
    fail("unexpected character");
  }

 private:
  const std::string& t_;
  std::size_t p_ = 0;
  std::vector<std::string>* vars_;
  bool allow_new_;
};

BSeries to_bseries(const PSeries& s, int trunc, Parser& at) {
  std::vector<Rational> c;
  for (const auto& q : s) {
    if (!q.is_constant()) at.fail("parameters are not allowed here");
    c.push_back(q.constant_term());
  }
  if (c.empty()) c.push_back(0);
  int deg = static_cast<int>(c.size()) - 1;
  BSeries r(c, deg);
  if (trunc < 0) return r;
  if (trunc < deg) {
    for (int d = trunc + 1; d <= deg; ++d)
      if (c[d] != 0) at.fail("series degree exceeds trunc");
    return r.truncated(trunc);
  }
  return r.padded(trunc);
}

struct XiParts {
  std::map<Rational, std::vector<PSeries>> parts;  // lambda -> comps
};

XiParts parse_xi_parts(const std::string& text, int trunc, std::vector<std::string>* vars) {
  Parser P(text, vars, vars != nullptr);
  XiParts out;
  bool first = true;
  while (!P.at_end()) {
    int sign = 1;
    if (P.accept('-')) sign = -1;
    else if (!first) P.expect('+');
    first = false;
    PSeries coeff = ps_const(1);
    while (!P.accept_word("s")) {
      coeff = ps_mul(coeff, P.power());
      if (P.accept('/')) {
        long d = P.integer();
        if (d == 0) P.fail("zero denominator");
        coeff = ps_mul(coeff, ps_const(Rational(1, d)));
      }
      P.expect('*');
    }
    P.expect('^');
    Rational r;
    if (P.accept('(')) {
      r = P.rational();
      P.expect(')');
    } else {
      r = P.rational();
    }
    int j = 0;
    std::size_t log_at = P.pos();
    bool has_log = false, has_marker = false;
    if (P.accept('*')) {
      P.expect_word("log");
      P.expect('(');
      P.expect_word("s");
      P.expect(')');
      has_log = true;
      j = 1;
      if (P.accept('^')) j = static_cast<int>(P.integer());
      if (P.accept('/')) {
        long f = P.integer();
        P.expect('!');
        if (f != j) P.fail("factorial marker must be /" + std::to_string(j) + "!");
        has_marker = true;
      }
    }
    if (has_log && j >= 2 && !has_marker)
      throw Error(ErrorCode::AmbiguousNormalization,
                  "log(s)^" + std::to_string(j) + " at position " + std::to_string(log_at) +
                      " lacks the /" + std::to_string(j) + "! marker: it reads either as " +
                      std::to_string(j) + "! e_{lambda," + std::to_string(j) +
                      "} (literal power) or as e_{lambda," + std::to_string(j) +
                      "} (marker omitted); write log(s)^" + std::to_string(j) + "/" +
                      std::to_string(j) + "! or scale the coefficient explicitly");
    Rational lam = lambda_class(r + 1);
    XiElement base = xi_s_power(r, j, j, trunc);
    auto& comps = out.parts[lam];
    if (static_cast<int>(comps.size()) < j + 1) comps.resize(j + 1);
    for (int h = 0; h <= j; ++h) {
      PSeries bs;
      for (int d = 0; d <= trunc; ++d) bs.push_back(MPoly(base.comps[h][d]));
      PSeries prod = ps_mul(coeff, ps_trim(bs));
      if (static_cast<int>(prod.size()) > trunc + 1) prod.resize(trunc + 1);
      comps[h] = ps_add(comps[h], prod, sign);
    }
  }
  if (first) P.fail("empty expression");
  return out;
}

}  // namespace

PSeries parse_pseries(const std::string& text, std::vector<std::string>& vars, bool allow_new) {
  Parser P(text, &vars, allow_new);
  PSeries s = P.expr();
  if (!P.at_end()) P.fail("unexpected trailing input");
  return s;
}

BSeries parse_series(const std::string& text, int trunc) {
  Parser P(text, nullptr, false);
  PSeries s = P.expr();
  if (!P.at_end()) P.fail("unexpected trailing input");
  return to_bseries(s, trunc, P);
}

StandardWord parse_word(const std::string& text, int trunc) {
  Parser P(text, nullptr, false);
  StandardWord w;
  bool expect_a = true;
  while (true) {
    if (expect_a) {
      P.expect('(');
      P.expect_word("a");
      Rational lam = 0;
      if (P.peek() == '-' || P.peek() == '+') {
        bool minus = P.accept('-');
        if (!minus) P.expect('+');
        Rational c = 1;
        if (P.peek() != 'b') c = P.rational();
        P.accept('*');
        P.expect_word("b");
        lam = minus ? c : Rational(-c);
      }
      P.expect(')');
      w.lambdas.push_back(lam);
    } else {
      P.expect_word("inv");
      P.expect('(');
      PSeries s = P.expr();
      P.expect(')');
      BSeries S = to_bseries(s, trunc, P);
      if (S[0] == 0) throw Error(ErrorCode::NonInvertible, "inv() of a series without constant term");
      w.S.push_back(S);
    }
    if (P.at_end()) break;
    P.expect('*');
    expect_a = !expect_a;
  }
  if (!expect_a) P.fail("word must end with an (a - lambda b) factor");
  return w;
}

ThemePresentation presentation_from_word(const StandardWord& w) {
  std::vector<int> p;
  for (std::size_t j = 0; j + 1 < w.lambdas.size(); ++j) {
    Rational pj = w.lambdas[j + 1] - w.lambdas[j] + 1;
    if (!is_integer(pj) || pj < 0)
      throw Error(ErrorCode::InvalidPresentation,
                  "lambda_{j+1} - lambda_j + 1 must be a natural number");
    p.push_back(static_cast<int>(pj.get_num().get_si()));
  }
  std::vector<BSeries> S;
  for (const auto& s : w.S) {
    if (s[0] != 1) S.push_back(s * (1 / s[0]));
    else S.push_back(s);
  }
  return make_presentation(w.lambdas.front(), p, S, true);
}

XiMultiElement parse_xi(const std::string& text, int trunc) {
  XiParts parts = parse_xi_parts(text, trunc, nullptr);
  XiMultiElement out;
  for (const auto& [lam, comps] : parts.parts) {
    XiElement x{lam, zero_elem(comps.size(), trunc)};
    for (std::size_t j = 0; j < comps.size(); ++j)
      for (std::size_t d = 0; d < comps[j].size(); ++d)
        x.comps[j].set(static_cast<int>(d), comps[j][d].constant_term());
    out.parts.emplace(lam, x);
  }
  return out;
}

ParamXi parse_param_xi(const std::string& text, int trunc) {
  std::vector<std::string> vars;
  XiParts parts = parse_xi_parts(text, trunc, &vars);
  if (parts.parts.size() != 1)
    throw Error(ErrorCode::InvalidInput, "parametric expression must use a single lambda class");
  ParamXi out;
  out.lambda = parts.parts.begin()->first;
  out.params = vars;
  out.comps = parts.parts.begin()->second;
  return out;
}

}  // namespace theme
