#include "tvaut/scalars.hpp"

#include <cctype>

namespace tvaut {

int lex_cmp(const QVec& a, const QVec& b) {
  TVAUT_CHECK(a.size() == b.size(), "lex_cmp on vectors of different length");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    int c = cmp(a(i), b(i));
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int lex_cmp(const ZVec& a, const ZVec& b) {
  TVAUT_CHECK(a.size() == b.size(), "lex_cmp on vectors of different length");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    int c = cmp(a(i), b(i));
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

bool vec_eq(const QVec& a, const QVec& b) {
  return a.size() == b.size() && lex_cmp(a, b) == 0;
}

bool vec_eq(const ZVec& a, const ZVec& b) {
  return a.size() == b.size() && lex_cmp(a, b) == 0;
}

bool is_integral(const Rat& x) { return x.get_den() == 1; }

bool is_integral(const QVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integral(v(i))) return false;
  return true;
}

ZVec to_integral(const QVec& v) {
  TVAUT_CHECK(is_integral(v), "to_integral on a non-integral vector");
  ZVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).get_num();
  return out;
}

QVec to_rational(const ZVec& v) {
  QVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rat(v(i));
  return out;
}

namespace {

bool is_plain_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

} // namespace

Int parse_integer(const std::string& s) {
  if (!is_plain_integer(s)) fail_input("ParseError", "not an integer literal: '" + s + "'");
  return Int(s);
}

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_integer(s));
  Int num = parse_integer(s.substr(0, slash));
  Int den = parse_integer(s.substr(slash + 1));
  if (den == 0) fail_input("ParseError", "zero denominator in '" + s + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_integer(const Int& x) { return x.get_str(); }

} // namespace tvaut
