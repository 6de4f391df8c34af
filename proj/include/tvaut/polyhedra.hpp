#pragma once

#include "tvaut/scalars.hpp"

// Exact rational convex geometry in V-representation: pointed cones given by
// primitive integer rays, polyhedra given by vertices plus a recession (tail)
// cone. All constructors canonicalize, so record equality is geometric
// equality. Redundancy and pointedness are certified by exact rational
// feasibility (Fourier-Motzkin elimination); fine at the ranks used here.

namespace tvaut {

class Cone {
public:
  // Canonicalizes: primitive rays, deduplicated, irredundant, lex-sorted.
  // Throws NotPointed if the generated cone contains a line, or
  // DimensionMismatch on ragged input.
  static Cone from_rays(int dim, const std::vector<ZVec>& raw_rays);
  static Cone zero(int dim) { return from_rays(dim, {}); }

  int dim() const { return dim_; }
  const std::vector<ZVec>& rays() const { return rays_; }
  bool is_zero() const { return rays_.empty(); }

  bool operator==(const Cone& o) const;
  bool operator!=(const Cone& o) const { return !(*this == o); }

  // Membership of a rational vector in the generated cone.
  bool contains(const QVec& v) const;

private:
  Cone(int dim, std::vector<ZVec> rays) : dim_(dim), rays_(std::move(rays)) {}
  int dim_ = 0;
  std::vector<ZVec> rays_;
};

class Polyhedron {
public:
  // Canonicalizes the vertex list (deduplicated, irredundant with respect to
  // conv(vertices) + tail, lex-sorted). The vertex list must be nonempty.
  static Polyhedron make(std::vector<QVec> vertices, Cone tail);
  static Polyhedron point(const QVec& v, const Cone& tail);
  // The neutral element for the Minkowski sum: {v} + the zero cone.
  static Polyhedron lattice_point(const QVec& v);

  int dim() const { return tail_.dim(); }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const Cone& tail() const { return tail_; }
  bool is_single_point() const { return vertices_.size() == 1; }

  bool operator==(const Polyhedron& o) const;
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }

private:
  Polyhedron(std::vector<QVec> v, Cone t) : vertices_(std::move(v)), tail_(std::move(t)) {}
  std::vector<QVec> vertices_;
  Cone tail_;
};

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q);
Polyhedron translate(const Polyhedron& p, const QVec& v);

// The unique v with q = p + v, if any. Uniqueness holds because tail cones
// are pointed, so the lex-min vertex is well defined.
std::optional<QVec> translate_of(const Polyhedron& p, const Polyhedron& q);

namespace detail {
// Feasibility of { x in Q^n : row * (x,1) <= 0 for all rows }, i.e. each row
// is (c_1 .. c_n, d) encoding c.x + d <= 0.
bool fm_feasible(std::vector<std::vector<Rat>> rows, int nvars);
// Is t a nonnegative rational combination of gens?
bool in_cone_hull(const std::vector<ZVec>& gens, const QVec& t);
// Is t in conv(points) + cone(gens)?
bool in_conv_plus_cone(const std::vector<QVec>& points, const std::vector<ZVec>& gens,
                       const QVec& t);
} // namespace detail

} // namespace tvaut
