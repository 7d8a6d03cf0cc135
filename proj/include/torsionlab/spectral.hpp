#pragma once

#include "torsionlab/cosets.hpp"
#include "torsionlab/numeric.hpp"
#include "torsionlab/words.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace torsionlab {

/// Singular values in descending order (length min(rows, cols)).
std::vector<double> singular_values(const MatD& m);

/// Largest singular value; 0 for an empty matrix.
double operator_norm(const MatD& m);

/// Product of the top `rank` singular values; the rank must come from an
/// exact computation, never from a float threshold.
double det_prime_float(const MatD& m, Index rank);

/// Right-continuous increasing step function on [0, infinity), constant at
/// and beyond `cutoff`: an empirical spectral distribution.
struct StepDensity {
  double value_at_zero = 0;
  std::vector<std::pair<double, double>> jumps;  // (lambda, mass), ascending lambda > 0
  double cutoff = 0;

  double eval(double lambda) const;
  double total() const;
};

StepDensity make_step_density(double value_at_zero,
                              std::vector<std::pair<double, double>> jumps,
                              double cutoff);

/// Eigenvalue distribution of the domain Gram operator m * m^T, masses
/// weighted by 1/normalizer. Pass the exact rank so zero eigenvalues are
/// identified without float thresholds.
StepDensity spectral_density(const MatD& m, long normalizer,
                             std::optional<Index> exact_rank = {});

/// log-determinant of the positive part, integral of log(lambda) dF. Two
/// independent integration routes are evaluated and must agree; disagreement
/// throws.
double density_log_det(const StepDensity& f);

/// Pointwise minimum, the finite-prefix lower envelope of a family.
StepDensity pointwise_min(const std::vector<StepDensity>& fs);

/// A-priori bound rows * cols * max l1-coefficient-norm dominating the
/// operator norm of every matrix induced from b.
Int norm_bound(const GroupRingMatrix& b);

struct FkRow {
  Index index = 0;
  Int det2;
  double log_det_over_n = 0;
  double f_zero = 0;
  StepDensity density;
};

/// Finite-quotient determinant trend of a group-ring matrix across a family
/// of coset tables. liminf_log_det is the running minimum of the per-table
/// density log-determinants; liminf_density is the pointwise lower envelope
/// of the densities and envelope_log_det its own log-determinant, which
/// dominates every per-table value (the envelope sits below every density,
/// so its spectrum sits above).
struct FkReport {
  std::vector<FkRow> rows;
  StepDensity liminf_density;
  double liminf_log_det = 0;
  double envelope_log_det = 0;
};

FkReport fk_report(const GroupRingMatrix& b, const std::vector<CosetTable>& tables);

}  // namespace torsionlab
