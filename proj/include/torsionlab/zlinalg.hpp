#pragma once

#include "torsionlab/numeric.hpp"

#include <vector>

namespace torsionlab {

/// Smith normal form data: positive elementary divisors d_1 | d_2 | ... | d_r.
struct SmithForm {
  std::vector<Int> divisors;
  Index rank = 0;
};

/// Smith form with unimodular transforms, U * M * V = diag(divisors).
struct SmithTransforms {
  SmithForm form;
  MatZ U, V;
};

/// Hermite form data: H = U * M with U unimodular, H in row echelon form
/// with positive pivots and reduced entries above each pivot.
struct HermiteForm {
  MatZ H, U;
  Index rank = 0;
};

/// Full-rank sublattice of Z^ambient, given by independent basis rows.
/// vol2 is the Gram determinant of the basis (squared covolume); 1 for the
/// zero lattice.
struct LatticeBasis {
  MatZ basis;  // rank x ambient
  Index ambient = 0;
  Int vol2 = 1;
};

/// Two-sided exact check of the torsion-vs-determinant bounds for an integer
/// matrix: t^2 <= det'^2 and t^2 * vol^2(ker) <= det'^2.
struct TorsionBoundReport {
  Int torsion = 1;
  Int vol2_kernel = 1;
  Int det2 = 1;
  bool torsion_bound_ok = false;
  bool kernel_bound_ok = false;
};

/// Fraction-free determinant of a square integer matrix.
Int bareiss_det(MatZ m);

SmithForm smith_form(MatZ m);
SmithTransforms smith_form_with_transforms(const MatZ& m);

HermiteForm hermite_form(const MatZ& m);

Index rank(const MatZ& m);

/// Kernel of the row-vector map x -> x * m as a saturated lattice in Z^rows.
LatticeBasis kernel_lattice(const MatZ& m);

/// Row-space of m as a lattice in Z^cols (Hermite basis).
LatticeBasis image_lattice(const MatZ& m);

/// Gram determinant of the rows (1 for an empty basis).
Int gram_det2(const MatZ& basis);

/// Smallest saturated lattice containing L (same rank, Q-span intersected
/// with Z^ambient).
LatticeBasis saturate(const LatticeBasis& l);

/// [sat(L) : L], the covolume ratio; exact integer.
Int saturation_index(const LatticeBasis& l, const LatticeBasis& sat);

/// Squared modified determinant det'^2(m) = vol^2(ker) * vol^2(im) for the
/// map between standard lattices; 1 for the zero map.
Int det_prime_squared(const MatZ& m);

/// Torsion subgroup order and free rank of Z^cols / rowspace(m).
struct CokernelSummary {
  Int torsion = 1;
  Index free_rank = 0;
};
CokernelSummary cokernel_summary(const MatZ& m);

TorsionBoundReport torsion_bound_report(const MatZ& m);

}  // namespace torsionlab
