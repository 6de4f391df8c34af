#include "tvaut/curves.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tvaut {

GaussQ GaussQ::inverse() const {
  if (is_zero()) fail_input("DivisionByZero", "inverse of 0 in Q(i)");
  Rat n = norm();
  return GaussQ(re / n, -im / n);
}

int cmp(const GaussQ& a, const GaussQ& b) {
  int c = cmp(a.re, b.re);
  if (c != 0) return c < 0 ? -1 : 1;
  c = cmp(a.im, b.im);
  return c == 0 ? 0 : (c < 0 ? -1 : 1);
}

GaussQ parse_gauss(const std::string& s) {
  if (s.empty()) fail_input("ParseError", "empty scalar literal");
  if (s.back() != 'i') return GaussQ(parse_rational(s));
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign preceded by a digit: "<re><sign><im>"
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && std::isdigit(static_cast<unsigned char>(body[i - 1]))) {
      split = i;
      break;
    }
  }
  auto parse_im = [](const std::string& part) -> Rat {
    if (part.empty() || part == "+") return Rat(1);
    if (part == "-") return Rat(-1);
    return parse_rational(part);
  };
  if (split == std::string::npos) return GaussQ(Rat(0), parse_im(body));
  Rat re = parse_rational(body.substr(0, split));
  std::string im_part = body.substr(split); // keeps the sign
  if (im_part == "+") return GaussQ(re, Rat(1));
  if (im_part == "-") return GaussQ(re, Rat(-1));
  return GaussQ(re, parse_rational(im_part));
}

std::string format_gauss(const GaussQ& z) {
  if (z.im == 0) return format_rational(z.re);
  std::string im;
  if (z.im == 1)
    im = "i";
  else if (z.im == -1)
    im = "-i";
  else
    im = format_rational(z.im) + "i";
  if (z.re == 0) return im;
  if (im[0] == '-') return format_rational(z.re) + im;
  return format_rational(z.re) + "+" + im;
}

int cmp(const P1Point& a, const P1Point& b) {
  if (a.is_infinity() && b.is_infinity()) return 0;
  if (a.is_infinity()) return 1;
  if (b.is_infinity()) return -1;
  return cmp(a.value(), b.value());
}

P1Point parse_p1_point(const std::string& s) {
  if (s == "inf") return P1Point::infinity();
  return P1Point::finite(parse_gauss(s));
}

std::string format_p1_point(const P1Point& p) {
  return p.is_infinity() ? "inf" : format_gauss(p.value());
}

void Mobius::scale_canonical() {
  const GaussQ* pivot = nullptr;
  for (const GaussQ* e : {&a_, &b_, &c_, &d_})
    if (!e->is_zero()) {
      pivot = e;
      break;
    }
  TVAUT_CHECK(pivot != nullptr, "zero matrix as a Mobius map");
  GaussQ inv = pivot->inverse();
  a_ = a_ * inv;
  b_ = b_ * inv;
  c_ = c_ * inv;
  d_ = d_ * inv;
}

Mobius Mobius::identity() { return from_coeffs(GaussQ(Rat(1)), GaussQ(), GaussQ(), GaussQ(Rat(1))); }

Mobius Mobius::from_coeffs(GaussQ a, GaussQ b, GaussQ c, GaussQ d) {
  if ((a * d - b * c).is_zero())
    fail_input("DegenerateMobius", "matrix has zero determinant");
  Mobius m(std::move(a), std::move(b), std::move(c), std::move(d));
  m.scale_canonical();
  return m;
}

Mobius Mobius::standard_triple(const P1Point& z1, const P1Point& z2, const P1Point& z3) {
  TVAUT_CHECK(z1 != z2 && z1 != z3 && z2 != z3, "standard_triple needs distinct points");
  const GaussQ one(Rat(1));
  if (z1.is_infinity()) {
    // f(0) = inf, f(1) = z2, f(inf) = z3
    return from_coeffs(z3.value(), z2.value() - z3.value(), one, GaussQ());
  }
  if (z2.is_infinity()) {
    return from_coeffs(z3.value(), -z1.value(), one, -one);
  }
  if (z3.is_infinity()) {
    return from_coeffs(z2.value() - z1.value(), z1.value(), GaussQ(), one);
  }
  GaussQ c = z2.value() - z1.value();
  GaussQ d = z3.value() - z2.value();
  return from_coeffs(z3.value() * c, z1.value() * d, c, d);
}

Mobius Mobius::through(const std::array<P1Point, 3>& from, const std::array<P1Point, 3>& to) {
  Mobius mf = standard_triple(from[0], from[1], from[2]);
  Mobius mt = standard_triple(to[0], to[1], to[2]);
  return mt.compose(mf.inverse());
}

P1Point Mobius::apply(const P1Point& p) const {
  GaussQ x, y;
  if (p.is_infinity()) {
    x = GaussQ(Rat(1));
    y = GaussQ();
  } else {
    x = p.value();
    y = GaussQ(Rat(1));
  }
  GaussQ nx = a_ * x + b_ * y;
  GaussQ ny = c_ * x + d_ * y;
  if (ny.is_zero()) return P1Point::infinity();
  return P1Point::finite(nx / ny);
}

Mobius Mobius::compose(const Mobius& i) const {
  return from_coeffs(a_ * i.a_ + b_ * i.c_, a_ * i.b_ + b_ * i.d_,
                     c_ * i.a_ + d_ * i.c_, c_ * i.b_ + d_ * i.d_);
}

Mobius Mobius::inverse() const { return from_coeffs(d_, -b_, -c_, a_); }

Mobius Mobius::conj() const { return from_coeffs(a_.conj(), b_.conj(), c_.conj(), d_.conj()); }

bool Mobius::operator==(const Mobius& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

std::string format_mobius(const Mobius& m) {
  auto term = [](const GaussQ& coeff, bool with_t) -> std::string {
    if (coeff.is_zero()) return "";
    std::string cs = format_gauss(coeff);
    if (!with_t) return cs;
    if (coeff == GaussQ(Rat(1))) return "t";
    if (coeff == GaussQ(Rat(-1))) return "-t";
    bool needs_parens = !coeff.is_real();
    return (needs_parens ? "(" + cs + ")" : cs) + "*t";
  };
  auto linear = [&](const GaussQ& p, const GaussQ& q) -> std::string {
    std::string tp = term(p, true), tq = term(q, false);
    if (tp.empty() && tq.empty()) return "0";
    if (tp.empty()) return tq;
    if (tq.empty()) return tp;
    if (tq[0] == '-') return tp + " - " + tq.substr(1);
    return tp + " + " + tq;
  };
  std::string num = linear(m.a(), m.b());
  if (m.c().is_zero() && m.d() == GaussQ(Rat(1))) return "t -> " + num;
  return "t -> (" + num + ")/(" + linear(m.c(), m.d()) + ")";
}

EllipticCurve EllipticCurve::make(Rat a, Rat b) {
  EllipticCurve e{std::move(a), std::move(b)};
  if (e.discriminant_core() == 0)
    fail_input("SingularCurve", "4a^3 + 27b^2 = 0");
  return e;
}

int cmp(const ECPoint& a, const ECPoint& b) {
  if (a.is_origin() && b.is_origin()) return 0;
  if (a.is_origin()) return -1;
  if (b.is_origin()) return 1;
  int c = cmp(a.x(), b.x());
  if (c != 0) return c < 0 ? -1 : 1;
  c = cmp(a.y(), b.y());
  return c == 0 ? 0 : (c < 0 ? -1 : 1);
}

ECPoint parse_ec_point(const std::string& s) {
  if (s == "O") return ECPoint::origin();
  if (s.size() < 5 || s.front() != '(' || s.back() != ')')
    fail_input("ParseError", "elliptic point must be 'O' or '(x,y)': '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string::npos)
    fail_input("ParseError", "elliptic point must be 'O' or '(x,y)': '" + s + "'");
  return ECPoint::affine(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
}

std::string format_ec_point(const ECPoint& p) {
  if (p.is_origin()) return "O";
  return "(" + format_rational(p.x()) + "," + format_rational(p.y()) + ")";
}

bool ec_on_curve(const EllipticCurve& e, const ECPoint& p) {
  if (p.is_origin()) return true;
  return p.y() * p.y() == p.x() * p.x() * p.x() + e.a * p.x() + e.b;
}

static void require_on_ec(const EllipticCurve& e, const ECPoint& p) {
  if (!ec_on_curve(e, p))
    fail_input("PointNotOnCurve", format_ec_point(p) + " does not satisfy the curve equation");
}

ECPoint ec_neg(const EllipticCurve& e, const ECPoint& p) {
  require_on_ec(e, p);
  if (p.is_origin()) return p;
  return ECPoint::affine(p.x(), -p.y());
}

ECPoint ec_add(const EllipticCurve& e, const ECPoint& p, const ECPoint& q) {
  require_on_ec(e, p);
  require_on_ec(e, q);
  if (p.is_origin()) return q;
  if (q.is_origin()) return p;
  if (p.x() == q.x() && p.y() == -q.y()) return ECPoint::origin();
  Rat lambda;
  if (p == q) {
    // tangent slope; y != 0 here since (x, 0) + (x, 0) = O was handled above
    lambda = (Rat(3) * p.x() * p.x() + e.a) / (Rat(2) * p.y());
  } else {
    lambda = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rat x3 = lambda * lambda - p.x() - q.x();
  Rat y3 = lambda * (p.x() - x3) - p.y();
  return ECPoint::affine(x3, y3);
}

ECPoint ec_sub(const EllipticCurve& e, const ECPoint& p, const ECPoint& q) {
  return ec_add(e, p, ec_neg(e, q));
}

ECPoint ec_mul(const EllipticCurve& e, const Int& k, const ECPoint& p) {
  Int n = k;
  ECPoint base = p;
  if (n < 0) {
    n = -n;
    base = ec_neg(e, p);
  }
  ECPoint acc = ECPoint::origin();
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (n == 0) return acc;
  for (size_t i = bits; i-- > 0;) {
    acc = ec_add(e, acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) acc = ec_add(e, acc, base);
  }
  return acc;
}

namespace {

std::vector<Int> integer_roots_monic_cubic(const Int& a, const Int& c0) {
  // roots of x^3 + a x + c0
  std::vector<Int> roots;
  auto eval = [&](const Int& x) { return x * x * x + a * x + c0; };
  if (c0 == 0) {
    roots.push_back(0);
    if (a <= 0) {
      Int m = -a;
      if (mpz_perfect_square_p(m.get_mpz_t())) {
        Int s = sqrt(m);
        if (s != 0) {
          roots.push_back(s);
          roots.push_back(-s);
        }
      }
    }
    return roots;
  }
  Int abs_c = abs(c0);
  for (Int d = 1; d * d <= abs_c; ++d) {
    if (abs_c % d != 0) continue;
    Int cod = abs_c / d;
    for (const Int& cand : {d, cod}) {
      for (const Int& x : {cand, Int(-cand)}) {
        if (eval(x) == 0) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool is_torsion_upto_12(const EllipticCurve& e, const ECPoint& p) {
  ECPoint acc = p;
  for (int k = 1; k <= 12; ++k) {
    if (acc.is_origin()) return true;
    acc = ec_add(e, acc, p);
  }
  return false;
}

} // namespace

std::vector<ECPoint> ec_torsion(const EllipticCurve& e) {
  // rescale (x, y) -> (u^2 x, u^3 y) until the model is integral
  Int ulimit = lcm(e.a.get_den(), e.b.get_den());
  Int u = 0;
  for (Int t = 1; t <= ulimit; ++t) {
    Int t4 = t * t * t * t;
    Int t6 = t4 * t * t;
    if (is_integral(e.a * Rat(t4)) && is_integral(e.b * Rat(t6))) {
      u = t;
      break;
    }
  }
  if (u == 0) fail_input("NonIntegralModel", "could not clear denominators of the model");
  Int u4 = u * u * u * u;
  Int u6 = u4 * u * u;
  Int ia = Rat(e.a * Rat(u4)).get_num();
  Int ib = Rat(e.b * Rat(u6)).get_num();
  EllipticCurve ei = EllipticCurve::make(Rat(ia), Rat(ib));

  Int core = 4 * ia * ia * ia + 27 * ib * ib;
  Int bound = 16 * abs(core);

  std::vector<ECPoint> found;
  auto consider = [&](const Int& x, const Int& y) {
    ECPoint p = ECPoint::affine(Rat(x), Rat(y));
    if (!ec_on_curve(ei, p)) return;
    if (is_torsion_upto_12(ei, p)) found.push_back(p);
  };
  for (const Int& x : integer_roots_monic_cubic(ia, ib)) consider(x, 0);
  for (Int y = 1; y * y <= bound; ++y) {
    if (bound % (y * y) != 0) continue;
    for (const Int& x : integer_roots_monic_cubic(ia, ib - y * y)) {
      consider(x, y);
      consider(x, -y);
    }
  }

  // map back to the original model
  std::vector<ECPoint> out;
  out.push_back(ECPoint::origin());
  Int iu2 = u * u, iu3 = u * u * u;
  Rat u2(iu2), u3(iu3);
  for (const ECPoint& p : found)
    out.push_back(ECPoint::affine(p.x() / u2, p.y() / u3));
  std::sort(out.begin(), out.end(), [](const ECPoint& a, const ECPoint& b) { return cmp(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  TVAUT_CHECK(out.size() <= 16, "rational torsion larger than the Mazur bound");
  return out;
}

EllipticAut ec_aut_compose(const EllipticCurve& e, const EllipticAut& f, const EllipticAut& g) {
  // (f o g)(Q) = eps_f eps_g Q + (eps_f t_g + t_f)
  EllipticAut out;
  out.negate = f.negate != g.negate;
  ECPoint tg = f.negate ? ec_neg(e, g.shift) : g.shift;
  out.shift = ec_add(e, tg, f.shift);
  return out;
}

EllipticAut ec_aut_inverse(const EllipticCurve& e, const EllipticAut& f) {
  EllipticAut out;
  out.negate = f.negate;
  out.shift = f.negate ? f.shift : ec_neg(e, f.shift);
  return out;
}

ECPoint ec_aut_apply(const EllipticCurve& e, const EllipticAut& f, const ECPoint& p) {
  ECPoint q = f.negate ? ec_neg(e, p) : p;
  return ec_add(e, q, f.shift);
}

std::string format_elliptic_aut(const EllipticAut& f) {
  if (!f.negate && f.shift.is_origin()) return "identity";
  std::string head = f.negate ? "Q -> -Q" : "Q -> Q";
  if (f.shift.is_origin()) return head;
  return head + " + " + format_ec_point(f.shift);
}

std::string format_curve_aut(const CurveAut& a) {
  if (std::holds_alternative<Mobius>(a)) return format_mobius(std::get<Mobius>(a));
  return format_elliptic_aut(std::get<EllipticAut>(a));
}

CurveModel CurveModel::p1() { return CurveModel(); }

CurveModel CurveModel::p1_minus(std::vector<P1Point> punctures) {
  if (punctures.empty()) fail_input("EmptyPunctureSet", "P1 minus S needs a nonempty S");
  std::sort(punctures.begin(), punctures.end(),
            [](const P1Point& a, const P1Point& b) { return cmp(a, b) < 0; });
  for (size_t i = 1; i < punctures.size(); ++i)
    if (punctures[i] == punctures[i - 1])
      fail_input("DuplicatePuncture", "repeated puncture " + format_p1_point(punctures[i]));
  CurveModel m;
  m.kind_ = CurveKind::P1Minus;
  m.punctures_ = std::move(punctures);
  return m;
}

CurveModel CurveModel::elliptic(EllipticCurve e) {
  CurveModel m;
  m.kind_ = CurveKind::Elliptic;
  m.ec_ = std::move(e);
  return m;
}

const EllipticCurve& CurveModel::curve() const {
  TVAUT_CHECK(kind_ == CurveKind::Elliptic, "curve() on a genus-0 model");
  return ec_;
}

bool CurveModel::operator==(const CurveModel& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == CurveKind::P1Minus) {
    if (punctures_.size() != o.punctures_.size()) return false;
    for (size_t i = 0; i < punctures_.size(); ++i)
      if (punctures_[i] != o.punctures_[i]) return false;
  }
  if (kind_ == CurveKind::Elliptic) return ec_.a == o.ec_.a && ec_.b == o.ec_.b;
  return true;
}

int cmp(const CurvePoint& a, const CurvePoint& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (std::holds_alternative<P1Point>(a))
    return cmp(std::get<P1Point>(a), std::get<P1Point>(b));
  return cmp(std::get<ECPoint>(a), std::get<ECPoint>(b));
}

bool curve_point_eq(const CurvePoint& a, const CurvePoint& b) { return cmp(a, b) == 0; }

std::string format_curve_point(const CurvePoint& p) {
  if (std::holds_alternative<P1Point>(p)) return format_p1_point(std::get<P1Point>(p));
  return format_ec_point(std::get<ECPoint>(p));
}

bool on_model(const CurveModel& c, const CurvePoint& p) {
  switch (c.kind()) {
    case CurveKind::P1:
      return std::holds_alternative<P1Point>(p);
    case CurveKind::P1Minus: {
      if (!std::holds_alternative<P1Point>(p)) return false;
      const P1Point& q = std::get<P1Point>(p);
      for (const P1Point& s : c.punctures())
        if (s == q) return false;
      return true;
    }
    case CurveKind::Elliptic:
      return std::holds_alternative<ECPoint>(p) && ec_on_curve(c.curve(), std::get<ECPoint>(p));
  }
  return false;
}

void require_on_model(const CurveModel& c, const CurvePoint& p) {
  if (!on_model(c, p))
    fail_input("PointNotOnCurve", format_curve_point(p) + " is not a point of the curve model");
}

void require_automorphism(const CurveModel& c, const CurveAut& aut) {
  switch (c.kind()) {
    case CurveKind::P1:
      if (!std::holds_alternative<Mobius>(aut))
        fail_input("NotAnAutomorphism", "genus-0 models take Mobius maps");
      return;
    case CurveKind::P1Minus: {
      if (!std::holds_alternative<Mobius>(aut))
        fail_input("NotAnAutomorphism", "genus-0 models take Mobius maps");
      const Mobius& m = std::get<Mobius>(aut);
      for (const P1Point& s : c.punctures()) {
        P1Point img = m.apply(s);
        bool hit = false;
        for (const P1Point& t : c.punctures())
          if (t == img) {
            hit = true;
            break;
          }
        if (!hit)
          fail_input("NotAnAutomorphism",
                     "map sends puncture " + format_p1_point(s) + " to " + format_p1_point(img) +
                         ", which is not a puncture");
      }
      return;
    }
    case CurveKind::Elliptic: {
      if (!std::holds_alternative<EllipticAut>(aut))
        fail_input("NotAnAutomorphism",
                   "elliptic models take translations and the [-1] involution");
      const EllipticAut& f = std::get<EllipticAut>(aut);
      if (!ec_on_curve(c.curve(), f.shift))
        fail_input("PointNotOnCurve", "translation point is not on the curve");
      return;
    }
  }
}

CurvePoint apply_aut(const CurveModel& c, const CurveAut& aut, const CurvePoint& p) {
  if (std::holds_alternative<Mobius>(aut)) {
    TVAUT_CHECK(std::holds_alternative<P1Point>(p), "Mobius applied to an elliptic point");
    return std::get<Mobius>(aut).apply(std::get<P1Point>(p));
  }
  TVAUT_CHECK(std::holds_alternative<ECPoint>(p), "elliptic map applied to a P1 point");
  return ec_aut_apply(c.curve(), std::get<EllipticAut>(aut), std::get<ECPoint>(p));
}

CurveAut inverse_aut(const CurveModel& c, const CurveAut& aut) {
  if (std::holds_alternative<Mobius>(aut)) return std::get<Mobius>(aut).inverse();
  return ec_aut_inverse(c.curve(), std::get<EllipticAut>(aut));
}

CurveAut compose_aut(const CurveModel& c, const CurveAut& outer, const CurveAut& inner) {
  if (std::holds_alternative<Mobius>(outer)) {
    TVAUT_CHECK(std::holds_alternative<Mobius>(inner), "mixed automorphism kinds");
    return std::get<Mobius>(outer).compose(std::get<Mobius>(inner));
  }
  TVAUT_CHECK(std::holds_alternative<EllipticAut>(inner), "mixed automorphism kinds");
  return ec_aut_compose(c.curve(), std::get<EllipticAut>(outer), std::get<EllipticAut>(inner));
}

void Divisor::add(const CurvePoint& p, const Int& mult) {
  if (mult == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const auto& e, const CurvePoint& q) { return cmp(e.first, q) < 0; });
  if (it != entries_.end() && curve_point_eq(it->first, p)) {
    it->second += mult;
    if (it->second == 0) entries_.erase(it);
  } else {
    entries_.insert(it, {p, mult});
  }
}

Int Divisor::degree() const {
  Int d = 0;
  for (const auto& [p, m] : entries_) d += m;
  return d;
}

Int Divisor::multiplicity(const CurvePoint& p) const {
  for (const auto& [q, m] : entries_)
    if (curve_point_eq(q, p)) return m;
  return 0;
}

bool Divisor::operator==(const Divisor& o) const {
  if (entries_.size() != o.entries_.size()) return false;
  for (size_t i = 0; i < entries_.size(); ++i)
    if (!curve_point_eq(entries_[i].first, o.entries_[i].first) ||
        entries_[i].second != o.entries_[i].second)
      return false;
  return true;
}

std::string format_factored(const FactoredFunction& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (const auto& [root, exp] : f.factors) {
    std::string base;
    if (root.is_zero())
      base = "t";
    else if (root.is_real() && root.re < 0)
      base = "(t + " + format_gauss(-root) + ")";
    else if (root.is_real())
      base = "(t - " + format_gauss(root) + ")";
    else
      base = "(t - (" + format_gauss(root) + "))";
    if (!out.empty()) out += "*";
    out += base;
    if (exp != 1) out += "^" + format_integer(exp);
  }
  return out;
}

Divisor divisor_of(const CurveModel& c, const FactoredFunction& f) {
  TVAUT_CHECK(c.kind() != CurveKind::Elliptic, "factored functions live on genus-0 models");
  Divisor d;
  Int total = 0;
  for (const auto& [root, exp] : f.factors) {
    d.add(P1Point::finite(root), exp);
    total += exp;
  }
  d.add(P1Point::infinity(), -total);
  if (c.kind() == CurveKind::P1Minus) {
    Divisor restricted;
    for (const auto& [p, m] : d.entries())
      if (on_model(c, p)) restricted.add(p, m);
    return restricted;
  }
  return d;
}

PrincipalityResult is_principal(const CurveModel& c, const Divisor& d) {
  for (const auto& [p, m] : d.entries()) require_on_model(c, p);
  PrincipalityResult res;
  switch (c.kind()) {
    case CurveKind::P1: {
      Int deg = d.degree();
      if (deg != 0) {
        res.degree_obstruction = deg;
        return res;
      }
      FactoredFunction w;
      for (const auto& [p, m] : d.entries()) {
        const P1Point& q = std::get<P1Point>(p);
        if (!q.is_infinity()) w.factors.push_back({q.value(), m});
      }
      res.principal = true;
      res.witness = std::move(w);
      return res;
    }
    case CurveKind::P1Minus: {
      // balance the degree at the distinguished puncture, then factor on P1
      Int deg = d.degree();
      Divisor ext = d;
      ext.add(CurvePoint(c.punctures().front()), -deg);
      FactoredFunction w;
      for (const auto& [p, m] : ext.entries()) {
        const P1Point& q = std::get<P1Point>(p);
        if (!q.is_infinity()) w.factors.push_back({q.value(), m});
      }
      res.principal = true;
      res.witness = std::move(w);
      return res;
    }
    case CurveKind::Elliptic: {
      Int deg = d.degree();
      if (deg != 0) {
        res.degree_obstruction = deg;
        return res;
      }
      ECPoint sum = ECPoint::origin();
      for (const auto& [p, m] : d.entries())
        sum = ec_add(c.curve(), sum, ec_mul(c.curve(), m, std::get<ECPoint>(p)));
      res.elliptic_sum = sum;
      if (sum.is_origin()) {
        res.principal = true;
      } else {
        res.point_obstruction = sum;
      }
      return res;
    }
  }
  return res;
}

UnitsLattice units_lattice(const CurveModel& c) {
  UnitsLattice l;
  if (c.kind() != CurveKind::P1Minus) return l;
  l.rank = static_cast<int>(c.punctures().size()) - 1;
  l.base = c.punctures().front();
  l.others.assign(c.punctures().begin() + 1, c.punctures().end());
  return l;
}

std::vector<int> puncture_permutation(const CurveModel& c, const CurveAut& aut) {
  require_automorphism(c, aut);
  const auto& s = c.punctures();
  std::vector<int> sigma(s.size());
  for (size_t j = 0; j < s.size(); ++j) {
    P1Point img = std::get<Mobius>(aut).apply(s[j]);
    int idx = -1;
    for (size_t k = 0; k < s.size(); ++k)
      if (s[k] == img) {
        idx = static_cast<int>(k);
        break;
      }
    TVAUT_CHECK(idx >= 0, "automorphism check passed but image misses the puncture set");
    sigma[j] = idx;
  }
  return sigma;
}

ZMat induced_unit_action(const CurveModel& c, const CurveAut& aut) {
  require_automorphism(c, aut);
  if (c.kind() != CurveKind::P1Minus) return ZMat::Zero(0, 0);
  std::vector<int> sigma = puncture_permutation(c, aut);
  const int m = static_cast<int>(sigma.size()) - 1;
  ZMat mat = ZMat::Zero(m, m);
  // basis f_j = e_j - e_0 maps to e_{sigma(j)} - e_{sigma(0)}
  for (int j = 1; j <= m; ++j) {
    if (sigma[j] >= 1) mat(sigma[j] - 1, j - 1) += 1;
    if (sigma[0] >= 1) mat(sigma[0] - 1, j - 1) -= 1;
  }
  return mat;
}

namespace {

// auxiliary rational points distinct from everything in `avoid`
std::vector<P1Point> fresh_points(const std::vector<P1Point>& avoid, size_t count) {
  std::vector<P1Point> out;
  for (int k = 0; out.size() < count; ++k) {
    P1Point cand = P1Point::finite(GaussQ(Rat(k)));
    bool clash = false;
    for (const P1Point& p : avoid)
      if (p == cand) clash = true;
    for (const P1Point& p : out)
      if (p == cand) clash = true;
    if (!clash) out.push_back(cand);
  }
  return out;
}

bool same_point_set(std::vector<P1Point> a, std::vector<P1Point> b) {
  if (a.size() != b.size()) return false;
  auto lt = [](const P1Point& x, const P1Point& y) { return cmp(x, y) < 0; };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

} // namespace

MobiusStabilizer stabilizer_of_classes(const std::vector<std::vector<P1Point>>& classes_in) {
  std::vector<std::vector<P1Point>> classes;
  for (const auto& cl : classes_in)
    if (!cl.empty()) classes.push_back(cl);

  std::vector<P1Point> all;
  for (const auto& cl : classes) all.insert(all.end(), cl.begin(), cl.end());
  std::sort(all.begin(), all.end(), [](const P1Point& a, const P1Point& b) { return cmp(a, b) < 0; });
  for (size_t i = 1; i < all.size(); ++i)
    TVAUT_CHECK(all[i] != all[i - 1], "stabilizer classes must be disjoint");

  MobiusStabilizer st;
  st.marked = all;

  if (all.empty()) {
    st.kind = MobiusStabilizer::Kind::FullPGL2;
    return st;
  }
  if (all.size() == 1) {
    st.kind = MobiusStabilizer::Kind::Affine;
    auto aux = fresh_points(all, 2);
    st.to_normal = Mobius::through({all[0], aux[0], aux[1]},
                                   {P1Point::infinity(), P1Point::finite(GaussQ(Rat(0))),
                                    P1Point::finite(GaussQ(Rat(1)))});
    return st;
  }
  if (all.size() == 2) {
    st.kind = MobiusStabilizer::Kind::Torus;
    auto aux = fresh_points(all, 1);
    st.to_normal = Mobius::through({all[0], all[1], aux[0]},
                                   {P1Point::finite(GaussQ(Rat(0))), P1Point::infinity(),
                                    P1Point::finite(GaussQ(Rat(1)))});
    bool swappable = classes.size() == 1; // both points in one class
    if (swappable) {
      Mobius inv = Mobius::from_coeffs(GaussQ(), GaussQ(Rat(1)), GaussQ(Rat(1)), GaussQ());
      st.swap_witness = st.to_normal->inverse().compose(inv).compose(*st.to_normal);
    }
    return st;
  }

  // finite case: candidates determined by the images of three marked points
  st.kind = MobiusStabilizer::Kind::Finite;
  std::array<P1Point, 3> base = {all[0], all[1], all[2]};
  auto class_of = [&](const P1Point& p) -> const std::vector<P1Point>& {
    for (const auto& cl : classes)
      for (const P1Point& q : cl)
        if (q == p) return cl;
    fail_internal("marked point without a class");
  };
  const auto& c0 = class_of(base[0]);
  const auto& c1 = class_of(base[1]);
  const auto& c2 = class_of(base[2]);
  for (const P1Point& q0 : c0)
    for (const P1Point& q1 : c1)
      for (const P1Point& q2 : c2) {
        if (q0 == q1 || q0 == q2 || q1 == q2) continue;
        Mobius m = Mobius::through(base, {q0, q1, q2});
        bool ok = true;
        for (const auto& cl : classes) {
          std::vector<P1Point> image;
          image.reserve(cl.size());
          for (const P1Point& p : cl) image.push_back(m.apply(p));
          if (!same_point_set(image, cl)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        bool dup = false;
        for (const Mobius& e : st.elements)
          if (e == m) dup = true;
        if (!dup) st.elements.push_back(m);
      }
  return st;
}

MobiusStabilizer mobius_stabilizer(const std::vector<P1Point>& s) {
  std::vector<std::vector<P1Point>> classes;
  if (!s.empty()) classes.push_back(s);
  return stabilizer_of_classes(classes);
}

} // namespace tvaut
