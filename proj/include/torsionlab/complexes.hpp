#pragma once

#include "torsionlab/cosets.hpp"
#include "torsionlab/presentation.hpp"
#include "torsionlab/zlinalg.hpp"

#include <optional>
#include <random>
#include <vector>

namespace torsionlab {

/// Induction of a group-ring matrix at a finite coset table: each entry
/// becomes an index x index block, words acting as permutation matrices.
/// Row convention throughout: x maps to x * M.
MatZ induce_matrix(const GroupRingMatrix& b, const CosetTable& t);

/// Bounded chain complex of f.g. free Z-modules, degrees 0..top.
/// boundaries[k] is the map from degree k+1 to degree k, of shape
/// dims[k+1] x dims[k]. The factory checks shapes and that consecutive
/// boundaries compose to zero.
struct ChainComplex {
  std::vector<Index> dims;
  std::vector<MatZ> boundaries;
  Index top() const { return static_cast<Index>(dims.size()) - 1; }
};

ChainComplex make_chain_complex(std::vector<Index> dims, std::vector<MatZ> boundaries);

/// Complex of the finite cover described by the table; the table must kill
/// the relators. H_0 is verified to be Z.
ChainComplex cover_complex(const GroupPresentation& p, const CosetTable& t);

struct HomologySummary {
  std::vector<Index> betti;
  std::vector<Int> torsion;
};
HomologySummary homology(const ChainComplex& c);

/// Determinant of 1 - P for a permutation P restricted to its nonzero part:
/// the product of the cycle lengths.
Int circle_det(const std::vector<int>& perm);

/// Restriction of right multiplication by the split-off Jacobian column to
/// the kernel of the induced Jacobian, with its exact squared determinant in
/// the induced metric (a rational, since the kernel lattice need not be
/// unimodular).
struct ConnectingMap {
  LatticeBasis domain;  // kernel of the induced reduced Jacobian
  MatZ matrix;          // domain.rank x index
  Rat det2;
  Index rank = 0;
};
ConnectingMap connecting_map(const GroupPresentation& p, const CosetTable& t);

/// Exact comparison t_1^2 <= det'^2(beta) * det'^2(J) at one cover.
struct CoverInequalityReport {
  Index index = 0;
  Index b1 = 0;
  Int t1;
  Int det2_jacobian;
  Rat det2_beta;
  bool ok = false;
};
CoverInequalityReport cover_inequality_report(const GroupPresentation& p,
                                              const CosetTable& t);

/// Homology of the branched version of a cyclic (or any) cover: cokernel of
/// the induced reduced Jacobian. Requires a declared meridian.
struct BranchedHomology {
  Int torsion;
  Index free_rank = 0;
};
BranchedHomology branched_homology(const GroupPresentation& p, const CosetTable& t);

/// Torsion data of a chain complex on its standard bases: squared modified
/// determinants per boundary, homology, squared regulators, and the two
/// squared torsions. The identity tau_rs2 == tau_h2 * reg2 is checked on
/// construction.
struct TorsionReport {
  std::vector<Int> det2;        // det'^2 of the degree-k boundary, k = 1..top
  std::vector<Index> betti;     // degree 0..top
  std::vector<Int> torsion;     // t(H_k)
  std::vector<Rat> regulator2;  // R_k^2
  Rat tau_rs2;
  Rat tau_h2;
  Rat reg2;
};
TorsionReport torsion_report(const ChainComplex& c);

/// Both sides of the closed-manifold determinant identity at one cover:
/// tau_rs2 against det'^2(J) / (det'^2(1-a) * det'^2(1-b)) for the
/// distinguished last generator a and last dual b.
struct ClosedCoverReport {
  Index index = 0;
  TorsionReport torsion;
  Int det2_jacobian;
  Int det2_one_minus_a;
  Int det2_one_minus_b;
  Rat rhs2;
  Rat ratio2;  // tau_rs2 / rhs2
};
ClosedCoverReport closed_cover_report(const GroupPresentation& p, const CosetTable& t);

/// Seeded random complex with dd = 0, for property testing: boundaries are
/// drawn top-down, each constrained to land in the kernel of the previous.
ChainComplex random_chain_complex(std::mt19937_64& rng, Index top_degree,
                                  Index max_dim, long coeff_bound);

}  // namespace torsionlab
