#include "tvaut/galois_lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace tvaut {

namespace {

void swap_rows(ZMat& m, Eigen::Index i, Eigen::Index j) { m.row(i).swap(m.row(j)); }
void swap_cols(ZMat& m, Eigen::Index i, Eigen::Index j) { m.col(i).swap(m.col(j)); }

} // namespace

SmithForm smith_normal_form(const ZMat& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  SmithForm s;
  s.u = ZMat::Identity(rows, rows);
  s.v = ZMat::Identity(cols, cols);
  s.d = m;

  const Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j) {
          if (s.d(i, j) == 0) continue;
          if (pi < 0 || abs(s.d(i, j)) < abs(s.d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        pi = pj = -1;
        break;
      }
      if (pi != t) {
        swap_rows(s.d, t, pi);
        swap_rows(s.u, t, pi);
      }
      if (pj != t) {
        swap_cols(s.d, t, pj);
        swap_cols(s.v, t, pj);
      }

      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (s.d(i, t) == 0) continue;
        Int q = s.d(i, t) / s.d(t, t);
        if (q != 0) {
          s.d.row(i) -= q * s.d.row(t);
          s.u.row(i) -= q * s.u.row(t);
        }
        if (s.d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (s.d(t, j) == 0) continue;
        Int q = s.d(t, j) / s.d(t, t);
        if (q != 0) {
          s.d.col(j) -= q * s.d.col(t);
          s.v.col(j) -= q * s.v.col(t);
        }
        if (s.d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // enforce the divisibility chain: pivot must divide the trailing block
      bool fixed = false;
      for (Eigen::Index i = t + 1; i < rows && !fixed; ++i)
        for (Eigen::Index j = t + 1; j < cols && !fixed; ++j)
          if (s.d(i, j) % s.d(t, t) != 0) {
            s.d.row(t) += s.d.row(i);
            s.u.row(t) += s.u.row(i);
            fixed = true;
          }
      if (fixed) continue;

      if (s.d(t, t) < 0) {
        s.d.row(t) = -s.d.row(t);
        s.u.row(t) = -s.u.row(t);
      }
      break;
    }
    if (s.d(t, t) == 0) break; // trailing block vanished
  }
  return s;
}

ZMat kernel_basis(const ZMat& m) {
  SmithForm s = smith_normal_form(m);
  const Eigen::Index cols = m.cols();
  const Eigen::Index diag = std::min(m.rows(), cols);
  std::vector<Eigen::Index> zero_cols;
  for (Eigen::Index j = 0; j < cols; ++j)
    if (j >= diag || s.d(j, j) == 0) zero_cols.push_back(j);
  ZMat k(cols, static_cast<Eigen::Index>(zero_cols.size()));
  for (size_t idx = 0; idx < zero_cols.size(); ++idx)
    k.col(static_cast<Eigen::Index>(idx)) = s.v.col(zero_cols[idx]);
  return k;
}

namespace {

// integral coordinates of g in the saturated lattice spanned by the columns
// of basis (computed through the Smith form of basis)
ZVec lattice_coordinates(const SmithForm& sb, Eigen::Index basis_cols, const ZVec& g) {
  ZVec y = sb.u * g;
  const Eigen::Index r = basis_cols;
  ZVec x(r);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (i < r) {
      TVAUT_CHECK(sb.d(i, i) != 0 && y(i) % sb.d(i, i) == 0,
                  "vector is not in the spanned lattice");
      x(i) = y(i) / sb.d(i, i);
    } else {
      TVAUT_CHECK(y(i) == 0, "vector is not in the spanned lattice");
    }
  }
  return sb.v * x;
}

} // namespace

Int lattice_quotient_order(const ZMat& kernel_cols, const ZMat& generators) {
  const Eigen::Index r = kernel_cols.cols();
  if (r == 0) return 1;
  SmithForm sb = smith_normal_form(kernel_cols);
  ZMat coords(r, generators.cols());
  for (Eigen::Index j = 0; j < generators.cols(); ++j)
    coords.col(j) = lattice_coordinates(sb, r, generators.col(j));
  SmithForm sc = smith_normal_form(coords);
  Int order = 1;
  Eigen::Index nonzero = 0;
  for (Eigen::Index i = 0; i < std::min(coords.rows(), coords.cols()); ++i)
    if (sc.d(i, i) != 0) {
      order *= sc.d(i, i);
      ++nonzero;
    }
  TVAUT_CHECK(nonzero == r, "quotient is infinite");
  return order;
}

InvolutionLattice InvolutionLattice::make(ZMat sigma) {
  if (sigma.rows() != sigma.cols())
    fail_input("DimensionMismatch", "involution matrix must be square");
  ZMat sq = sigma * sigma;
  for (Eigen::Index i = 0; i < sq.rows(); ++i)
    for (Eigen::Index j = 0; j < sq.cols(); ++j)
      if (sq(i, j) != (i == j ? 1 : 0))
        fail_unsupported("NotInvolution", "matrix squared is not the identity");
  return InvolutionLattice(std::move(sigma));
}

CohomologyReport cohomology(const InvolutionLattice& l) {
  const int m = l.rank();
  CohomologyReport rep;
  if (m == 0) return rep;
  ZMat id = ZMat::Identity(m, m);
  ZMat minus = l.sigma() - id;
  ZMat plus = l.sigma() + id;

  ZMat ker_plus = kernel_basis(plus);   // cocycles for H^1
  ZMat ker_minus = kernel_basis(minus); // cocycles for Tate H^0
  const int r_plus = static_cast<int>(ker_minus.cols());
  const int r_minus = static_cast<int>(ker_plus.cols());

  rep.h1_order = lattice_quotient_order(ker_plus, minus);
  rep.tate0_order = lattice_quotient_order(ker_minus, plus);

  auto exact_log2 = [](Int n) -> int {
    int e = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++e;
    }
    TVAUT_CHECK(n == 1, "cohomology order is not a power of two");
    return e;
  };
  rep.a = exact_log2(rep.tate0_order);
  rep.b = exact_log2(rep.h1_order);
  rep.c = r_plus - rep.a;
  TVAUT_CHECK(rep.c >= 0 && rep.c == r_minus - rep.b, "summand multiplicities are inconsistent");
  TVAUT_CHECK(rep.a + rep.b + 2 * rep.c == m, "summand multiplicities do not add up to the rank");
  rep.h0_rank = rep.a + rep.c;
  return rep;
}

namespace {

using SmallVec = std::vector<int64_t>;

int64_t to_i64(const Int& x) {
  TVAUT_CHECK(x.fits_slong_p(), "entry too large for the brute-force oracle");
  return x.get_si();
}

struct BoxEnumerator {
  int m;
  int bound;
  SmallVec current;
  bool done = false;
  explicit BoxEnumerator(int m_, int bound_) : m(m_), bound(bound_), current(m_, -bound_) {
    if (m_ == 0) done = false; // single empty vector
  }
  bool next(SmallVec& out) {
    if (done) return false;
    out = current;
    if (m == 0) {
      done = true;
      return true;
    }
    int i = 0;
    while (i < m) {
      if (current[i] < bound) {
        ++current[i];
        break;
      }
      current[i] = -bound;
      ++i;
    }
    if (i == m) done = true;
    return true;
  }
};

Int count_classes(const std::vector<std::vector<int64_t>>& sigma, int m, int bound,
                  std::vector<ZVec>* reps) {
  auto apply = [&](const SmallVec& z) {
    SmallVec out(m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out[i] += sigma[i][j] * z[j];
    return out;
  };
  // cocycles in the box: z + sigma z = 0
  std::set<SmallVec> cocycles;
  {
    BoxEnumerator en(m, bound);
    SmallVec z;
    while (en.next(z)) {
      SmallVec s = apply(z);
      bool ok = true;
      for (int i = 0; i < m; ++i)
        if (z[i] + s[i] != 0) ok = false;
      if (ok) cocycles.insert(z);
    }
  }
  // coboundary steps: the generators (sigma - 1) e_j and their negatives
  std::vector<SmallVec> steps;
  for (int j = 0; j < m; ++j) {
    SmallVec g(m, 0);
    for (int i = 0; i < m; ++i) g[i] = sigma[i][j] - (i == j ? 1 : 0);
    bool zero = true;
    for (int i = 0; i < m; ++i)
      if (g[i] != 0) zero = false;
    if (zero) continue;
    SmallVec gn(m);
    for (int i = 0; i < m; ++i) gn[i] = -g[i];
    steps.push_back(g);
    steps.push_back(gn);
  }

  Int classes = 0;
  std::set<SmallVec> seen;
  for (const SmallVec& start : cocycles) {
    if (seen.count(start)) continue;
    classes += 1;
    if (reps) {
      ZVec r(m);
      for (int i = 0; i < m; ++i) r(i) = start[i];
      reps->push_back(r);
    }
    std::vector<SmallVec> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      SmallVec z = stack.back();
      stack.pop_back();
      for (const SmallVec& g : steps) {
        SmallVec nb(m);
        bool in_box = true;
        for (int i = 0; i < m; ++i) {
          nb[i] = z[i] + g[i];
          if (nb[i] < -bound || nb[i] > bound) in_box = false;
        }
        if (!in_box || seen.count(nb) || !cocycles.count(nb)) continue;
        seen.insert(nb);
        stack.push_back(nb);
      }
    }
  }
  return classes;
}

} // namespace

BruteForceH1 brute_force_h1(const InvolutionLattice& l, int bound) {
  const int m = l.rank();
  if (m > 6) fail_unsupported("BruteForceScale", "brute-force oracle is limited to rank <= 6");
  if (bound < 1 || bound > 10)
    fail_unsupported("BruteForceScale", "brute-force bound must be between 1 and 10");
  std::vector<std::vector<int64_t>> sigma(m, std::vector<int64_t>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sigma[i][j] = to_i64(l.sigma()(i, j));

  BruteForceH1 out;
  Int first = count_classes(sigma, m, bound, &out.representatives);
  Int second = count_classes(sigma, m, bound + 2, nullptr);
  if (first != second)
    fail_unsupported("Unstable", "class counts at bounds " + std::to_string(bound) + " and " +
                                     std::to_string(bound + 2) + " disagree");
  out.order = first;
  return out;
}

PermutationCheck is_permutation_involution(const InvolutionLattice& l) {
  PermutationCheck pc;
  pc.type = cohomology(l);
  pc.is_permutation = pc.type.b == 0;
  return pc;
}

ZMat sum_zero_action(const std::vector<int>& perm) {
  const int s = static_cast<int>(perm.size());
  TVAUT_CHECK(s >= 1, "permutation of an empty set");
  const int m = s - 1;
  ZMat mat = ZMat::Zero(m, m);
  for (int j = 1; j <= m; ++j) {
    if (perm[static_cast<size_t>(j)] >= 1) mat(perm[static_cast<size_t>(j)] - 1, j - 1) += 1;
    if (perm[0] >= 1) mat(perm[0] - 1, j - 1) -= 1;
  }
  return mat;
}

namespace {

std::vector<int> perm_compose(const std::vector<int>& f, const std::vector<int>& g) {
  std::vector<int> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = f[static_cast<size_t>(g[i])];
  return out;
}

bool perm_is_identity(const std::vector<int>& f) {
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != static_cast<int>(i)) return false;
  return true;
}

} // namespace

SumZeroCertificate sum_zero_permutation_certificate(const std::vector<std::vector<int>>& generators,
                                                    int set_size) {
  constexpr size_t kGroupCap = 10080;
  std::vector<int> id(static_cast<size_t>(set_size));
  for (int i = 0; i < set_size; ++i) id[static_cast<size_t>(i)] = i;

  for (const auto& g : generators) {
    TVAUT_CHECK(static_cast<int>(g.size()) == set_size, "generator has the wrong length");
    std::vector<bool> hit(static_cast<size_t>(set_size), false);
    for (int v : g) {
      TVAUT_CHECK(v >= 0 && v < set_size && !hit[static_cast<size_t>(v)], "generator is not a permutation");
      hit[static_cast<size_t>(v)] = true;
    }
  }

  std::set<std::vector<int>> group{id};
  std::vector<std::vector<int>> queue{id};
  while (!queue.empty()) {
    std::vector<int> g = queue.back();
    queue.pop_back();
    for (const auto& gen : generators) {
      std::vector<int> prod = perm_compose(gen, g);
      if (group.insert(prod).second) {
        if (group.size() > kGroupCap)
          fail_unsupported("GroupTooLarge", "generated permutation group exceeds the closure cap");
        queue.push_back(std::move(prod));
      }
    }
  }

  SumZeroCertificate cert;
  cert.group_order = group.size();

  for (int j = 0; j < set_size; ++j) {
    bool fixed = true;
    for (const auto& g : group)
      if (g[static_cast<size_t>(j)] != j) {
        fixed = false;
        break;
      }
    if (fixed) {
      cert.kind = SumZeroCertificate::Kind::Permutation;
      cert.fixed_index = j;
      return cert;
    }
  }

  for (const auto& g : group) {
    if (perm_is_identity(g) || !perm_is_identity(perm_compose(g, g))) continue;
    InvolutionLattice l = InvolutionLattice::make(sum_zero_action(g));
    CohomologyReport rep = cohomology(l);
    if (rep.b > 0) {
      cert.kind = SumZeroCertificate::Kind::NotPermutation;
      cert.witness = g;
      cert.witness_type = rep;
      return cert;
    }
  }
  cert.kind = SumZeroCertificate::Kind::Unknown;
  return cert;
}

} // namespace tvaut
