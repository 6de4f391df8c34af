#include "tvaut/polyhedra.hpp"

#include <algorithm>
#include <map>

namespace tvaut {
namespace detail {

namespace {

// Scale a row by a positive rational so entries are coprime integers.
void normalize_row(std::vector<Rat>& row) {
  Int l = 1;
  for (const Rat& x : row) l = lcm(l, x.get_den());
  Int g = 0;
  for (Rat& x : row) {
    x *= l;
    g = gcd(g, x.get_num());
  }
  if (g > 1)
    for (Rat& x : row) x /= Rat(g);
}

bool row_trivially_true(const std::vector<Rat>& row, int nvars) {
  for (int j = 0; j < nvars; ++j)
    if (row[j] != 0) return false;
  return row[nvars] <= 0;
}

bool row_trivially_false(const std::vector<Rat>& row, int nvars) {
  for (int j = 0; j < nvars; ++j)
    if (row[j] != 0) return false;
  return row[nvars] > 0;
}

} // namespace

bool fm_feasible(std::vector<std::vector<Rat>> rows, int nvars) {
  for (int step = 0; step < nvars; ++step) {
    // prune and dedupe before each elimination round
    std::vector<std::vector<Rat>> kept;
    for (auto& r : rows) {
      if (row_trivially_false(r, nvars)) return false;
      if (row_trivially_true(r, nvars)) continue;
      normalize_row(r);
      kept.push_back(std::move(r));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    rows = std::move(kept);
    if (rows.empty()) return true;

    // pick the variable minimizing the pos*neg fan-out
    int best = -1;
    size_t best_cost = 0;
    for (int j = 0; j < nvars; ++j) {
      size_t pos = 0, neg = 0, occ = 0;
      for (const auto& r : rows) {
        if (r[j] > 0) ++pos;
        if (r[j] < 0) ++neg;
        if (r[j] != 0) ++occ;
      }
      if (occ == 0) continue;
      size_t cost = pos * neg;
      if (best < 0 || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best < 0) break; // no variable left in any row

    std::vector<std::vector<Rat>> next;
    std::vector<const std::vector<Rat>*> pos, neg;
    for (const auto& r : rows) {
      if (r[best] > 0)
        pos.push_back(&r);
      else if (r[best] < 0)
        neg.push_back(&r);
      else
        next.push_back(r);
    }
    for (const auto* p : pos)
      for (const auto* n : neg) {
        // eliminate x_best from  p ( coeff > 0 ) and n ( coeff < 0 )
        std::vector<Rat> comb(nvars + 1);
        const Rat a = (*p)[best];
        const Rat b = -(*n)[best];
        for (int j = 0; j <= nvars; ++j) comb[j] = b * (*p)[j] + a * (*n)[j];
        comb[best] = 0;
        next.push_back(std::move(comb));
      }
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (row_trivially_false(r, nvars)) return false;
  return true;
}

bool in_cone_hull(const std::vector<ZVec>& gens, const QVec& t) {
  const int n = static_cast<int>(t.size());
  const int k = static_cast<int>(gens.size());
  if (k == 0) {
    for (Eigen::Index i = 0; i < t.size(); ++i)
      if (t(i) != 0) return false;
    return true;
  }
  // variables: lambda_1..lambda_k >= 0 with sum lambda_i g_i = t
  std::vector<std::vector<Rat>> rows;
  for (int i = 0; i < k; ++i) {
    std::vector<Rat> r(k + 1, Rat(0));
    r[i] = -1; // -lambda_i <= 0
    rows.push_back(std::move(r));
  }
  for (int c = 0; c < n; ++c) {
    std::vector<Rat> eq(k + 1, Rat(0));
    for (int i = 0; i < k; ++i) eq[i] = Rat(gens[i](c));
    eq[k] = -t(c);
    std::vector<Rat> eq_neg(k + 1);
    for (int j = 0; j <= k; ++j) eq_neg[j] = -eq[j];
    rows.push_back(std::move(eq));
    rows.push_back(std::move(eq_neg));
  }
  return fm_feasible(std::move(rows), k);
}

bool in_conv_plus_cone(const std::vector<QVec>& points, const std::vector<ZVec>& gens,
                       const QVec& t) {
  const int n = static_cast<int>(t.size());
  const int r = static_cast<int>(points.size());
  const int k = static_cast<int>(gens.size());
  if (r == 0) return false;
  // variables: lambda_1..lambda_r, mu_1..mu_k >= 0, sum lambda = 1,
  //            sum lambda_i w_i + sum mu_j g_j = t
  const int nv = r + k;
  std::vector<std::vector<Rat>> rows;
  for (int i = 0; i < nv; ++i) {
    std::vector<Rat> row(nv + 1, Rat(0));
    row[i] = -1;
    rows.push_back(std::move(row));
  }
  {
    std::vector<Rat> eq(nv + 1, Rat(0));
    for (int i = 0; i < r; ++i) eq[i] = 1;
    eq[nv] = -1; // sum lambda - 1 <= 0 and >= 0
    std::vector<Rat> eq_neg(nv + 1);
    for (int j = 0; j <= nv; ++j) eq_neg[j] = -eq[j];
    rows.push_back(std::move(eq));
    rows.push_back(std::move(eq_neg));
  }
  for (int c = 0; c < n; ++c) {
    std::vector<Rat> eq(nv + 1, Rat(0));
    for (int i = 0; i < r; ++i) eq[i] = points[i](c);
    for (int j = 0; j < k; ++j) eq[r + j] = Rat(gens[j](c));
    eq[nv] = -t(c);
    std::vector<Rat> eq_neg(nv + 1);
    for (int j = 0; j <= nv; ++j) eq_neg[j] = -eq[j];
    rows.push_back(std::move(eq));
    rows.push_back(std::move(eq_neg));
  }
  return fm_feasible(std::move(rows), nv);
}

} // namespace detail

Cone Cone::from_rays(int dim, const std::vector<ZVec>& raw_rays) {
  if (dim < 1) fail_input("DimensionMismatch", "ambient rank must be >= 1");
  std::vector<ZVec> rays;
  for (const ZVec& r : raw_rays) {
    if (r.size() != dim)
      fail_input("DimensionMismatch", "ray length does not match ambient rank");
    Int g = 0;
    for (Eigen::Index i = 0; i < r.size(); ++i) g = gcd(g, r(i));
    if (g == 0) continue; // zero vector generates nothing
    ZVec prim(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) prim(i) = r(i) / g;
    rays.push_back(std::move(prim));
  }
  std::sort(rays.begin(), rays.end(), [](const ZVec& a, const ZVec& b) { return lex_cmp(a, b) < 0; });
  rays.erase(std::unique(rays.begin(), rays.end(), [](const ZVec& a, const ZVec& b) { return vec_eq(a, b); }),
             rays.end());

  for (const ZVec& r : rays) {
    QVec neg = -to_rational(r);
    if (detail::in_cone_hull(rays, neg))
      fail_input("NotPointed", "generated cone contains a line");
  }

  // drop rays inside the hull of the others until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      std::vector<ZVec> others;
      for (size_t j = 0; j < rays.size(); ++j)
        if (j != i) others.push_back(rays[j]);
      if (detail::in_cone_hull(others, to_rational(rays[i]))) {
        rays.erase(rays.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return Cone(dim, std::move(rays));
}

bool Cone::operator==(const Cone& o) const {
  if (dim_ != o.dim_ || rays_.size() != o.rays_.size()) return false;
  for (size_t i = 0; i < rays_.size(); ++i)
    if (!vec_eq(rays_[i], o.rays_[i])) return false;
  return true;
}

bool Cone::contains(const QVec& v) const {
  if (v.size() != dim_) fail_input("DimensionMismatch", "vector rank differs from cone rank");
  return detail::in_cone_hull(rays_, v);
}

Polyhedron Polyhedron::make(std::vector<QVec> vertices, Cone tail) {
  if (vertices.empty()) fail_input("EmptyPolyhedron", "a polyhedron needs at least one vertex");
  for (const QVec& v : vertices)
    if (v.size() != tail.dim())
      fail_input("DimensionMismatch", "vertex length does not match ambient rank");

  std::sort(vertices.begin(), vertices.end(),
            [](const QVec& a, const QVec& b) { return lex_cmp(a, b) < 0; });
  vertices.erase(std::unique(vertices.begin(), vertices.end(),
                             [](const QVec& a, const QVec& b) { return vec_eq(a, b); }),
                 vertices.end());

  bool changed = true;
  while (changed && vertices.size() > 1) {
    changed = false;
    for (size_t i = 0; i < vertices.size(); ++i) {
      std::vector<QVec> others;
      for (size_t j = 0; j < vertices.size(); ++j)
        if (j != i) others.push_back(vertices[j]);
      if (detail::in_conv_plus_cone(others, tail.rays(), vertices[i])) {
        vertices.erase(vertices.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return Polyhedron(std::move(vertices), std::move(tail));
}

Polyhedron Polyhedron::point(const QVec& v, const Cone& tail) { return make({v}, tail); }

Polyhedron Polyhedron::lattice_point(const QVec& v) {
  return make({v}, Cone::zero(static_cast<int>(v.size())));
}

bool Polyhedron::operator==(const Polyhedron& o) const {
  if (tail_ != o.tail_ || vertices_.size() != o.vertices_.size()) return false;
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (!vec_eq(vertices_[i], o.vertices_[i])) return false;
  return true;
}

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) fail_input("DimensionMismatch", "Minkowski sum of different ranks");
  std::vector<ZVec> rays = p.tail().rays();
  rays.insert(rays.end(), q.tail().rays().begin(), q.tail().rays().end());
  Cone tail = Cone::from_rays(p.dim(), rays);
  std::vector<QVec> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const QVec& v : p.vertices())
    for (const QVec& w : q.vertices()) sums.push_back(v + w);
  return Polyhedron::make(std::move(sums), std::move(tail));
}

Polyhedron translate(const Polyhedron& p, const QVec& v) {
  if (p.dim() != v.size()) fail_input("DimensionMismatch", "translate of different rank");
  std::vector<QVec> verts;
  verts.reserve(p.vertices().size());
  for (const QVec& w : p.vertices()) verts.push_back(w + v);
  return Polyhedron::make(std::move(verts), p.tail());
}

std::optional<QVec> translate_of(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) fail_input("DimensionMismatch", "translate_of on different ranks");
  if (p.tail() != q.tail()) return std::nullopt;
  if (p.vertices().size() != q.vertices().size()) return std::nullopt;
  // lex order is translation invariant, so compare lex-min vertices
  QVec v = q.vertices().front() - p.vertices().front();
  if (translate(p, v) == q) return v;
  return std::nullopt;
}

} // namespace tvaut
