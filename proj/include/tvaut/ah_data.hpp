#pragma once

#include "tvaut/curves.hpp"
#include "tvaut/polyhedra.hpp"

// Polyhedral divisors on a curve: a finite map from curve points to polyhedra
// with a common tail cone. Points not listed implicitly carry the tail cone
// itself, and coefficients equal to it are normalized away.

namespace tvaut {

class AHDatum {
public:
  // Validates and canonicalizes. Throws TailMismatch, PointNotOnCurve,
  // NotPointed or DuplicatePoint on bad input.
  static AHDatum make(int torus_rank, Cone tail, CurveModel curve,
                      std::vector<std::pair<CurvePoint, Polyhedron>> coefficients);

  int torus_rank() const { return rank_; }
  const Cone& tail() const { return tail_; }
  const CurveModel& curve() const { return curve_; }
  const std::vector<std::pair<CurvePoint, Polyhedron>>& support() const { return coeffs_; }

  // coefficient at an arbitrary point (the tail polyhedron off the support)
  Polyhedron coefficient(const CurvePoint& p) const;
  Polyhedron tail_polyhedron() const;

  bool operator==(const AHDatum& o) const;

private:
  AHDatum() = default;
  int rank_ = 0;
  Cone tail_ = Cone::zero(1);
  CurveModel curve_ = CurveModel::p1();
  std::vector<std::pair<CurvePoint, Polyhedron>> coeffs_; // sorted by point
};

// Points whose coefficient is not a translate of the tail cone, grouped into
// classes of mutual translates.
struct BadLocus {
  std::vector<std::vector<CurvePoint>> classes; // canonical order
  bool empty() const { return classes.empty(); }
  std::vector<CurvePoint> points() const;
};

BadLocus bad_locus(const AHDatum& d);

// Coefficient of the result at P is the coefficient of d at psi(P).
AHDatum pullback(const CurveAut& psi, const AHDatum& d);

// One divisor per torus coordinate, all on the same curve model.
struct PluriDivisor {
  std::vector<Divisor> coords;
  bool is_zero() const;
  bool operator==(const PluriDivisor& o) const;
};

// d1 - d2 as a pluridivisor when every coefficient pair differs by an
// integral translate; otherwise the first offending point.
struct DifferenceResult {
  std::optional<PluriDivisor> divisors;
  std::optional<CurvePoint> offending;
};

DifferenceResult difference(const AHDatum& d1, const AHDatum& d2);

struct FactoredPlurifunction {
  std::vector<FactoredFunction> coords;
};

// Elliptic witness: no function is constructed, the certificate records the
// per-coordinate group-law sums (all trivial).
struct EllipticCertificate {
  std::vector<ECPoint> coordinate_sums;
};

using PluriWitness = std::variant<FactoredPlurifunction, EllipticCertificate>;

struct WitnessObstruction {
  int coordinate = 0;
  std::optional<Int> degree;     // nonzero degree
  std::optional<ECPoint> point;  // nonzero elliptic sum
};

struct PluriWitnessResult {
  std::optional<PluriWitness> witness;
  std::optional<WitnessObstruction> obstruction;
};

PluriWitnessResult plurifunction_witness(const CurveModel& c, const PluriDivisor& pd);

// Recomputed divisor of a genus-0 witness, for the round-trip identity.
PluriDivisor divisor_of(const CurveModel& c, const FactoredPlurifunction& f);

} // namespace tvaut
