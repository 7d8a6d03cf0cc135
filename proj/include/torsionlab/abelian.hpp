#pragma once

#include "torsionlab/laurent.hpp"
#include "torsionlab/presentation.hpp"

#include <optional>
#include <vector>

namespace torsionlab {

/// Resultant of two integer polynomials given by ascending coefficients
/// (Sylvester determinant).
Int resultant(const std::vector<Int>& f, const std::vector<Int>& g);

/// Order of the torsion of the n-fold cyclic branched homology computed from
/// the Alexander polynomial: |Res(Delta, t^n - 1)| / |Delta(1)|. Returns 0
/// when a root of unity is a root of Delta (Betti number jump).
Int cyclic_branched_torsion(const LaurentPoly& delta, long n);

double mahler_measure(const LaurentPoly& f);

struct GrowthRow {
  long n = 0;
  Int torsion;
  bool betti_jump = false;
  std::optional<double> log_torsion_over_n;
};

struct GrowthReport {
  LaurentPoly alexander;
  double mahler = 1;
  double log_mahler = 0;
  std::vector<GrowthRow> rows;
};

/// Branched-cover torsion growth along the cyclic tower (rows n = 2..max_n,
/// max_n >= 2), with the Mahler measure of the Alexander polynomial as the
/// limiting reference.
GrowthReport growth_report(const GroupPresentation& p, long max_n);

}  // namespace torsionlab
