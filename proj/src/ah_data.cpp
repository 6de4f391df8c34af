#include "tvaut/ah_data.hpp"

#include <algorithm>

namespace tvaut {

AHDatum AHDatum::make(int torus_rank, Cone tail, CurveModel curve,
                      std::vector<std::pair<CurvePoint, Polyhedron>> coefficients) {
  if (torus_rank < 1) fail_input("DimensionMismatch", "torus rank must be >= 1");
  if (tail.dim() != torus_rank)
    fail_input("DimensionMismatch", "tail cone lives in the wrong rank");

  AHDatum d;
  d.rank_ = torus_rank;
  d.tail_ = std::move(tail);
  d.curve_ = std::move(curve);

  Polyhedron omega = Polyhedron::point(QVec::Zero(torus_rank), d.tail_);
  for (auto& [p, delta] : coefficients) {
    require_on_model(d.curve_, p);
    if (delta.tail() != d.tail_)
      fail_input("TailMismatch",
                 "coefficient at " + format_curve_point(p) + " has a different tail cone");
    if (delta == omega) continue; // implicit coefficient, normalized away
    d.coeffs_.push_back({p, delta});
  }
  std::sort(d.coeffs_.begin(), d.coeffs_.end(),
            [](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
  for (size_t i = 1; i < d.coeffs_.size(); ++i)
    if (curve_point_eq(d.coeffs_[i].first, d.coeffs_[i - 1].first))
      fail_input("DuplicatePoint",
                 "two coefficients at " + format_curve_point(d.coeffs_[i].first));
  return d;
}

Polyhedron AHDatum::tail_polyhedron() const {
  return Polyhedron::point(QVec::Zero(rank_), tail_);
}

Polyhedron AHDatum::coefficient(const CurvePoint& p) const {
  for (const auto& [q, delta] : coeffs_)
    if (curve_point_eq(q, p)) return delta;
  return tail_polyhedron();
}

bool AHDatum::operator==(const AHDatum& o) const {
  if (rank_ != o.rank_ || tail_ != o.tail_ || !(curve_ == o.curve_)) return false;
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (!curve_point_eq(coeffs_[i].first, o.coeffs_[i].first) ||
        coeffs_[i].second != o.coeffs_[i].second)
      return false;
  return true;
}

std::vector<CurvePoint> BadLocus::points() const {
  std::vector<CurvePoint> out;
  for (const auto& cl : classes) out.insert(out.end(), cl.begin(), cl.end());
  std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) { return cmp(a, b) < 0; });
  return out;
}

BadLocus bad_locus(const AHDatum& d) {
  Polyhedron omega = d.tail_polyhedron();
  std::vector<std::pair<CurvePoint, Polyhedron>> bad;
  for (const auto& [p, delta] : d.support())
    if (!translate_of(omega, delta).has_value()) bad.push_back({p, delta});

  BadLocus locus;
  std::vector<bool> used(bad.size(), false);
  for (size_t i = 0; i < bad.size(); ++i) {
    if (used[i]) continue;
    std::vector<CurvePoint> cls{bad[i].first};
    used[i] = true;
    for (size_t j = i + 1; j < bad.size(); ++j) {
      if (used[j]) continue;
      if (translate_of(bad[i].second, bad[j].second).has_value()) {
        cls.push_back(bad[j].first);
        used[j] = true;
      }
    }
    locus.classes.push_back(std::move(cls));
  }
  return locus;
}

AHDatum pullback(const CurveAut& psi, const AHDatum& d) {
  require_automorphism(d.curve(), psi);
  CurveAut inv = inverse_aut(d.curve(), psi);
  std::vector<std::pair<CurvePoint, Polyhedron>> coeffs;
  for (const auto& [p, delta] : d.support())
    coeffs.push_back({apply_aut(d.curve(), inv, p), delta});
  return AHDatum::make(d.torus_rank(), d.tail(), d.curve(), std::move(coeffs));
}

bool PluriDivisor::is_zero() const {
  for (const Divisor& d : coords)
    if (!d.is_zero()) return false;
  return true;
}

bool PluriDivisor::operator==(const PluriDivisor& o) const {
  if (coords.size() != o.coords.size()) return false;
  for (size_t i = 0; i < coords.size(); ++i)
    if (!(coords[i] == o.coords[i])) return false;
  return true;
}

DifferenceResult difference(const AHDatum& d1, const AHDatum& d2) {
  TVAUT_CHECK(d1.torus_rank() == d2.torus_rank() && d1.tail() == d2.tail() &&
                  d1.curve() == d2.curve(),
              "difference of data with unequal rank, tail or curve");
  // union of supports, sorted
  std::vector<CurvePoint> pts;
  for (const auto& [p, delta] : d1.support()) pts.push_back(p);
  for (const auto& [p, delta] : d2.support()) pts.push_back(p);
  std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) { return cmp(a, b) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end(), curve_point_eq), pts.end());

  PluriDivisor pd;
  pd.coords.resize(static_cast<size_t>(d1.torus_rank()));
  for (const CurvePoint& p : pts) {
    std::optional<QVec> v = translate_of(d2.coefficient(p), d1.coefficient(p));
    if (!v || !is_integral(*v)) return {std::nullopt, p};
    for (int i = 0; i < d1.torus_rank(); ++i) pd.coords[static_cast<size_t>(i)].add(p, (*v)(i).get_num());
  }
  return {std::move(pd), std::nullopt};
}

PluriWitnessResult plurifunction_witness(const CurveModel& c, const PluriDivisor& pd) {
  PluriWitnessResult out;
  if (c.kind() == CurveKind::Elliptic) {
    EllipticCertificate cert;
    for (size_t i = 0; i < pd.coords.size(); ++i) {
      PrincipalityResult pr = is_principal(c, pd.coords[i]);
      if (!pr.principal) {
        WitnessObstruction ob;
        ob.coordinate = static_cast<int>(i);
        ob.degree = pr.degree_obstruction;
        ob.point = pr.point_obstruction;
        out.obstruction = std::move(ob);
        return out;
      }
      cert.coordinate_sums.push_back(*pr.elliptic_sum);
    }
    out.witness = PluriWitness(std::move(cert));
    return out;
  }
  FactoredPlurifunction f;
  for (size_t i = 0; i < pd.coords.size(); ++i) {
    PrincipalityResult pr = is_principal(c, pd.coords[i]);
    if (!pr.principal) {
      WitnessObstruction ob;
      ob.coordinate = static_cast<int>(i);
      ob.degree = pr.degree_obstruction;
      out.obstruction = std::move(ob);
      return out;
    }
    f.coords.push_back(*pr.witness);
  }
  out.witness = PluriWitness(std::move(f));
  return out;
}

PluriDivisor divisor_of(const CurveModel& c, const FactoredPlurifunction& f) {
  PluriDivisor pd;
  for (const FactoredFunction& g : f.coords) pd.coords.push_back(divisor_of(c, g));
  return pd;
}

} // namespace tvaut
