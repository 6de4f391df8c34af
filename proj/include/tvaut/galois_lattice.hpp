#pragma once

#include "tvaut/scalars.hpp"

// Integer-lattice cohomology for the order-two Galois group: Smith normal
// form, H^1 and Tate H^0 of an involution, the decomposition into trivial /
// sign / regular summands, and a brute-force cocycle oracle.

namespace tvaut {

struct SmithForm {
  ZMat u, d, v; // u * m * v = d, u and v unimodular, diagonal divisibility chain
};

SmithForm smith_normal_form(const ZMat& m);

// Basis of the kernel sublattice of m (a saturated direct summand).
ZMat kernel_basis(const ZMat& m);

// Order of (lattice spanned by kernel_cols) / (span of generator columns);
// requires the quotient to be finite.
Int lattice_quotient_order(const ZMat& kernel_cols, const ZMat& generators);

class InvolutionLattice {
public:
  static InvolutionLattice make(ZMat sigma); // throws NotInvolution
  int rank() const { return static_cast<int>(sigma_.rows()); }
  const ZMat& sigma() const { return sigma_; }

private:
  explicit InvolutionLattice(ZMat s) : sigma_(std::move(s)) {}
  ZMat sigma_;
};

// Multiplicities of the indecomposable summands: a trivial copies, b sign
// copies, c regular copies. |H^1| = 2^b, |Tate H^0| = 2^a.
struct CohomologyReport {
  int a = 0, b = 0, c = 0;
  Int h1_order = 1;
  Int tate0_order = 1;
  int h0_rank = 0;
};

CohomologyReport cohomology(const InvolutionLattice& l);

struct BruteForceH1 {
  Int order = 1;
  std::vector<ZVec> representatives; // one cocycle per class found
};

// Enumerates cocycles and coboundary steps over the coordinate box
// [-bound, bound]; class counts are recomputed at bound + 2 and must agree.
// Throws Unstable when they do not. Rank <= 6, bound <= 10.
BruteForceH1 brute_force_h1(const InvolutionLattice& l, int bound);

struct PermutationCheck {
  bool is_permutation = false;
  CohomologyReport type; // the (a, b, c) certificate
};

// A Z/2-lattice is a permutation module iff no sign summand occurs.
PermutationCheck is_permutation_involution(const InvolutionLattice& l);

// Action of a permutation of {0..s-1} on the sum-zero sublattice of Z^s in
// the basis e_j - e_0, j = 1..s-1.
ZMat sum_zero_action(const std::vector<int>& perm);

struct SumZeroCertificate {
  enum class Kind { Permutation, NotPermutation, Unknown } kind = Kind::Unknown;
  std::optional<int> fixed_index;              // Permutation: a common fixed point
  std::optional<std::vector<int>> witness;     // NotPermutation: involution with b > 0
  std::optional<CohomologyReport> witness_type;
  size_t group_order = 0;
};

// Decides whether the sum-zero sublattice of Z^s is a permutation module for
// the group generated by the given permutations, by the fixed-point
// sufficient condition and the sign-summand necessary condition. Group
// closure is capped at 10080 elements.
SumZeroCertificate sum_zero_permutation_certificate(const std::vector<std::vector<int>>& generators,
                                                    int set_size);

} // namespace tvaut
