#pragma once

#include "torsionlab/abelian.hpp"
#include "torsionlab/complexes.hpp"
#include "torsionlab/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

struct ExperimentConfig {
  int max_index = 4;
  int cyclic_nmax = -1;  // -1 follows max_index
  std::optional<double> volume;
  int jobs = 1;
  bool expand_conjugates = false;
  long node_budget = 50'000'000;
};

/// One finite cover of a knot-exterior input: homology, exact squared
/// determinants, the torsion inequality verdict, and branched/meridian data.
struct ResultRow {
  std::string id;
  std::string kind;  // "lowindex" or "cyclic"
  Index index = 0;
  Index b1 = 0;
  Int t1;
  double ln_t1_over_n = 0;
  Int det2_jacobian;
  double ln_det_jacobian_over_n = 0;
  Rat det2_beta;
  bool ineq_ok = false;
  std::optional<Int> branched_torsion;
  std::optional<Index> branched_free_rank;
  std::optional<Rat> meridian_trace;
  std::string error;  // nonempty when this cover failed; other fields then unset
};

/// One finite cover of a closed input: torsion report plus both sides of the
/// determinant identity.
struct ClosedRow {
  std::string id;
  Index index = 0;
  std::vector<Index> betti;
  std::vector<Int> torsion;
  Rat tau_rs2;
  Rat rhs2;
  Rat ratio2;
  std::string error;
};

struct ExperimentSummary {
  std::optional<double> volume_reference;  // volume / (6 pi)
  std::optional<double> max_ln_t1_lowindex;
  std::optional<double> max_ln_det_lowindex;
  std::optional<double> max_ln_t1_cyclic;
  std::optional<double> max_ln_det_cyclic;
  std::optional<double> log_mahler;  // reference for the cyclic tower
  std::vector<std::string> notes;
};

struct ExperimentResult {
  GroupPresentation presentation;
  std::vector<ResultRow> rows;
  std::vector<ClosedRow> closed_rows;
  ExperimentSummary summary;
};

ExperimentResult run_experiment(const GroupPresentation& p, const ExperimentConfig& cfg);

std::string to_csv(const ExperimentResult& r);
std::string summary_text(const ExperimentResult& r);
std::string to_csv(const GrowthReport& r);
std::string to_csv(const FkReport& r);

std::string format_double(double v);
std::string format_rat(const Rat& v);
std::string format_int(const Int& v);

/// Flat `key = value` lines, '#' comments; later duplicates win.
std::map<std::string, std::string> parse_config(const std::string& text);

/// Presentation texts compiled into the library, keyed by name; identical to
/// the files shipped under data/.
const std::map<std::string, std::string>& bundled_presentations();

struct SelfcheckSuite {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfcheckResult {
  std::vector<SelfcheckSuite> suites;
  bool all_pass = false;
};

/// Deterministic invariant battery across every module. `presentations`
/// overrides the bundled inputs (used to exercise the failure paths).
SelfcheckResult run_selfcheck(
    uint64_t seed, std::ostream* log = nullptr,
    const std::map<std::string, std::string>* presentations = nullptr);

}  // namespace torsionlab
