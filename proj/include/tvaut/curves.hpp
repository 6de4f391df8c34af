#pragma once

#include "tvaut/scalars.hpp"

#include <array>
#include <variant>

// Exact curve models: the projective line over the Gaussian rationals,
// affine opens P1 \ S, and elliptic curves in short Weierstrass form over Q.
// Gaussian coordinates exist so that conjugate puncture pairs such as
// {i, -i} (the circle as a real form of G_m) are representable.

namespace tvaut {

struct GaussQ {
  Rat re, im;

  GaussQ() : re(0), im(0) {}
  explicit GaussQ(const Rat& r) : re(r), im(0) {}
  GaussQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussQ conj() const { return GaussQ(re, -im); }
  Rat norm() const { return re * re + im * im; } // x * conj(x)

  GaussQ operator+(const GaussQ& o) const { return GaussQ(re + o.re, im + o.im); }
  GaussQ operator-(const GaussQ& o) const { return GaussQ(re - o.re, im - o.im); }
  GaussQ operator-() const { return GaussQ(-re, -im); }
  GaussQ operator*(const GaussQ& o) const {
    return GaussQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GaussQ inverse() const;
  GaussQ operator/(const GaussQ& o) const { return *this * o.inverse(); }
  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussQ& o) const { return !(*this == o); }
};

int cmp(const GaussQ& a, const GaussQ& b); // (re, im) lexicographic

// Grammar: rational, or "<rat>i", or "<rat>+<rat>i" / "<rat>-<rat>i"; bare
// "i" and "-i" are accepted.
GaussQ parse_gauss(const std::string& s);
std::string format_gauss(const GaussQ& z);

class P1Point {
public:
  static P1Point infinity() { return P1Point(true, GaussQ()); }
  static P1Point finite(GaussQ z) { return P1Point(false, std::move(z)); }

  bool is_infinity() const { return inf_; }
  const GaussQ& value() const {
    TVAUT_CHECK(!inf_, "value() of the point at infinity");
    return z_;
  }
  P1Point conj() const { return inf_ ? *this : finite(z_.conj()); }

  bool operator==(const P1Point& o) const {
    return inf_ == o.inf_ && (inf_ || z_ == o.z_);
  }
  bool operator!=(const P1Point& o) const { return !(*this == o); }

private:
  P1Point(bool inf, GaussQ z) : inf_(inf), z_(std::move(z)) {}
  bool inf_;
  GaussQ z_;
};

int cmp(const P1Point& a, const P1Point& b); // finite points first, then by value
P1Point parse_p1_point(const std::string& s); // "inf" or a Gaussian literal
std::string format_p1_point(const P1Point& p);

// Projective automorphism t -> (a t + b) / (c t + d), stored with the first
// nonzero entry scaled to 1 so records compare canonically.
class Mobius {
public:
  static Mobius identity();
  static Mobius from_coeffs(GaussQ a, GaussQ b, GaussQ c, GaussQ d);
  // the unique map with 0 -> z1, 1 -> z2, inf -> z3 (pairwise distinct)
  static Mobius standard_triple(const P1Point& z1, const P1Point& z2, const P1Point& z3);
  // the unique map with p_i -> q_i for two triples of pairwise distinct points
  static Mobius through(const std::array<P1Point, 3>& from, const std::array<P1Point, 3>& to);

  P1Point apply(const P1Point& p) const;
  Mobius compose(const Mobius& inner) const; // this o inner
  Mobius inverse() const;
  Mobius conj() const;

  const GaussQ& a() const { return a_; }
  const GaussQ& b() const { return b_; }
  const GaussQ& c() const { return c_; }
  const GaussQ& d() const { return d_; }

  bool operator==(const Mobius& o) const;
  bool operator!=(const Mobius& o) const { return !(*this == o); }

private:
  Mobius(GaussQ a, GaussQ b, GaussQ c, GaussQ d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}
  void scale_canonical();
  GaussQ a_, b_, c_, d_;
};

std::string format_mobius(const Mobius& m);

struct EllipticCurve {
  Rat a, b; // y^2 = x^3 + a x + b

  static EllipticCurve make(Rat a, Rat b);
  Rat discriminant_core() const { return Rat(4) * a * a * a + Rat(27) * b * b; }
};

class ECPoint {
public:
  static ECPoint origin() { return ECPoint(true, Rat(0), Rat(0)); }
  static ECPoint affine(Rat x, Rat y) { return ECPoint(false, std::move(x), std::move(y)); }

  bool is_origin() const { return inf_; }
  const Rat& x() const {
    TVAUT_CHECK(!inf_, "x() of the origin");
    return x_;
  }
  const Rat& y() const {
    TVAUT_CHECK(!inf_, "y() of the origin");
    return y_;
  }

  bool operator==(const ECPoint& o) const {
    return inf_ == o.inf_ && (inf_ || (x_ == o.x_ && y_ == o.y_));
  }
  bool operator!=(const ECPoint& o) const { return !(*this == o); }

private:
  ECPoint(bool inf, Rat x, Rat y) : inf_(inf), x_(std::move(x)), y_(std::move(y)) {}
  bool inf_;
  Rat x_, y_;
};

int cmp(const ECPoint& a, const ECPoint& b); // origin first, then (x, y)
ECPoint parse_ec_point(const std::string& s); // "O" or "(x,y)"
std::string format_ec_point(const ECPoint& p);

bool ec_on_curve(const EllipticCurve& e, const ECPoint& p);
ECPoint ec_neg(const EllipticCurve& e, const ECPoint& p);
ECPoint ec_add(const EllipticCurve& e, const ECPoint& p, const ECPoint& q);
ECPoint ec_sub(const EllipticCurve& e, const ECPoint& p, const ECPoint& q);
ECPoint ec_mul(const EllipticCurve& e, const Int& k, const ECPoint& p);

// Full rational torsion subgroup, O included. Candidates come from the
// Lutz-Nagell integrality bound on a rescaled integral model; each one is
// certified by a finite-order check up to 12.
std::vector<ECPoint> ec_torsion(const EllipticCurve& e);

// Q -> (negate ? -Q : Q) + shift
struct EllipticAut {
  bool negate = false;
  ECPoint shift = ECPoint::origin();
};

EllipticAut ec_aut_compose(const EllipticCurve& e, const EllipticAut& f, const EllipticAut& g);
EllipticAut ec_aut_inverse(const EllipticCurve& e, const EllipticAut& f);
ECPoint ec_aut_apply(const EllipticCurve& e, const EllipticAut& f, const ECPoint& p);
std::string format_elliptic_aut(const EllipticAut& f);

using CurveAut = std::variant<Mobius, EllipticAut>;
std::string format_curve_aut(const CurveAut& a);

enum class CurveKind { P1, P1Minus, Elliptic };

class CurveModel {
public:
  static CurveModel p1();
  static CurveModel p1_minus(std::vector<P1Point> punctures); // nonempty, duplicate-free
  static CurveModel elliptic(EllipticCurve e);

  CurveKind kind() const { return kind_; }
  const std::vector<P1Point>& punctures() const { return punctures_; } // sorted
  const EllipticCurve& curve() const;
  bool is_projective() const { return kind_ != CurveKind::P1Minus; }
  int genus() const { return kind_ == CurveKind::Elliptic ? 1 : 0; }

  bool operator==(const CurveModel& o) const;

private:
  CurveModel() = default;
  CurveKind kind_ = CurveKind::P1;
  std::vector<P1Point> punctures_;
  EllipticCurve ec_;
};

using CurvePoint = std::variant<P1Point, ECPoint>;
int cmp(const CurvePoint& a, const CurvePoint& b);
bool curve_point_eq(const CurvePoint& a, const CurvePoint& b);
std::string format_curve_point(const CurvePoint& p);

// Membership of a point in the model (off the punctures, on the Weierstrass
// equation); throws PointNotOnCurve when validate is set.
bool on_model(const CurveModel& c, const CurvePoint& p);
void require_on_model(const CurveModel& c, const CurvePoint& p);

// Applies the automorphism; throws NotAnAutomorphism when it does not
// preserve the model (wrong kind, or psi(S) != S).
void require_automorphism(const CurveModel& c, const CurveAut& aut);
CurvePoint apply_aut(const CurveModel& c, const CurveAut& aut, const CurvePoint& p);
CurveAut inverse_aut(const CurveModel& c, const CurveAut& aut);
CurveAut compose_aut(const CurveModel& c, const CurveAut& outer, const CurveAut& inner);

class Divisor {
public:
  Divisor() = default;
  void add(const CurvePoint& p, const Int& mult);
  const std::vector<std::pair<CurvePoint, Int>>& entries() const { return entries_; }
  Int degree() const;
  bool is_zero() const { return entries_.empty(); }
  Int multiplicity(const CurvePoint& p) const;
  bool operator==(const Divisor& o) const;

private:
  std::vector<std::pair<CurvePoint, Int>> entries_; // sorted, no zero multiplicities
};

// Product of (t - root)^exp over the listed factors; roots may sit anywhere
// on the affine line, infinity is absorbed by homogenization.
struct FactoredFunction {
  std::vector<std::pair<GaussQ, Int>> factors;
  bool is_one() const { return factors.empty(); }
};

std::string format_factored(const FactoredFunction& f);

// Divisor of the factored function on the given genus-0 model (contributions
// at punctures are dropped for P1 \ S).
Divisor divisor_of(const CurveModel& c, const FactoredFunction& f);

struct PrincipalityResult {
  bool principal = false;
  std::optional<FactoredFunction> witness;       // genus 0
  std::optional<ECPoint> elliptic_sum;           // elliptic: group-law sum of the divisor
  std::optional<Int> degree_obstruction;         // nonzero degree
  std::optional<ECPoint> point_obstruction;      // nonzero elliptic sum
};

PrincipalityResult is_principal(const CurveModel& c, const Divisor& d);

// O(C)^x / k^x with basis the classes (s_j) - (s_0), s_0 the lex-least
// puncture. Rank |S| - 1 on P1 \ S, zero on projective models.
struct UnitsLattice {
  int rank = 0;
  std::optional<P1Point> base;
  std::vector<P1Point> others;
};

UnitsLattice units_lattice(const CurveModel& c);

// Matrix of the pushforward action on the units lattice in the stated basis
// (a group homomorphism); the automorphism must preserve the puncture set.
ZMat induced_unit_action(const CurveModel& c, const CurveAut& aut);

// Permutation of the sorted puncture list induced by the automorphism.
std::vector<int> puncture_permutation(const CurveModel& c, const CurveAut& aut);

struct MobiusStabilizer {
  enum class Kind { Finite, Torus, Affine, FullPGL2 } kind = Kind::FullPGL2;
  std::vector<Mobius> elements;       // Finite: all maps preserving the classes
  std::optional<Mobius> to_normal;    // Torus: pair -> {0, inf}; Affine: point -> inf
  std::optional<Mobius> swap_witness; // Torus: one representative of the swap coset
  std::vector<P1Point> marked;        // the points the description refers to
};

// Setwise stabilizer of S in PGL_2. For |S| >= 3 an explicit finite list,
// below that a parametric family descriptor.
MobiusStabilizer mobius_stabilizer(const std::vector<P1Point>& s);

// Common refinement: maps preserving every class setwise. Classes must be
// disjoint. Used with the puncture set and the translate classes of the
// divisor support.
MobiusStabilizer stabilizer_of_classes(const std::vector<std::vector<P1Point>>& classes);

} // namespace tvaut
