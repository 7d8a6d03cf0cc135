// Acceptance gate: eight pinned criteria, one pass/fail line each, nonzero
// exit if any fails or overruns its time budget.

#include "torsionlab/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace torsionlab;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& msg) {
  if (!ok) throw Failure(msg);
}

GroupPresentation bundled(const std::string& name) {
  return parse_presentation(bundled_presentations().at(name));
}

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0 : std::abs(a - b) / scale;
}

// Criterion 1: branched torsion from the cokernel of the induced Jacobian
// equals the integer resultant, cyclic covers n = 2..12.
void criterion1() {
  for (const char* name : {"trefoil", "figure8"}) {
    const GroupPresentation p = bundled(name);
    const LaurentPoly delta = abelianized_alexander(p);
    const bool trefoil = std::string(name) == "trefoil";
    for (int n = 2; n <= 12; ++n) {
      if (trefoil && n % 6 == 0) continue;
      const BranchedHomology bh = branched_homology(p, cyclic_cover_table(p, n));
      const Int oracle = cyclic_branched_torsion(delta, n);
      expect(bh.torsion == oracle,
             std::string(name) + " n=" + std::to_string(n) + ": cokernel " +
                 bh.torsion.get_str() + " vs resultant " + oracle.get_str());
      expect(bh.free_rank == 0, "unexpected free rank");
    }
    const Int t2 = branched_homology(p, cyclic_cover_table(p, 2)).torsion;
    expect(t2 == (trefoil ? 3 : 5), "pinned double-cover torsion");
  }
  expect(branched_homology(bundled("trefoil"), cyclic_cover_table(bundled("trefoil"), 5))
                 .torsion == 1,
         "pinned trefoil five-fold torsion");
}

// Criterion 2: exact torsion inequality t1^2 <= det'^2(beta) * det'^2(J) on
// every conjugacy class of index <= 6.
void criterion2(std::vector<std::pair<GroupPresentation, CosetTable>>& covers) {
  for (const char* name : {"trefoil", "figure8"}) {
    const GroupPresentation p = bundled(name);
    const std::vector<CosetTable> classes = low_index_tables(p, 6);
    expect(!classes.empty(), "no subgroups found");
    for (const CosetTable& t : classes) {
      const CoverInequalityReport rep = cover_inequality_report(p, t);
      const Int t1sq = rep.t1 * rep.t1;
      const Rat rhs = rep.det2_beta * Rat(rep.det2_jacobian);
      expect(rep.ok, std::string(name) + " index " + std::to_string(t.index) +
                         ": inequality reported false");
      expect(Rat(t1sq) <= rhs, "inequality fails on recomputation");
      covers.emplace_back(p, t);
    }
  }
}

// Criterion 3: tau_rs^2 == tau_h^2 * R^2 exactly, on 200 seeded random
// complexes and on every cover complex from criteria 1 and 2.
void criterion3(const std::vector<std::pair<GroupPresentation, CosetTable>>& covers) {
  std::mt19937_64 rng(0xACCE5501u);
  for (int trial = 0; trial < 200; ++trial) {
    const ChainComplex c = random_chain_complex(rng, 3, 4, 3);
    const TorsionReport rep = torsion_report(c);
    const Rat product = rep.tau_h2 * rep.reg2;
    expect(rep.tau_rs2 == product, "identity fails on a random complex");
  }

  std::vector<std::pair<GroupPresentation, CosetTable>> all = covers;
  for (const char* name : {"trefoil", "figure8"}) {
    const GroupPresentation p = bundled(name);
    const bool trefoil = std::string(name) == "trefoil";
    for (int n = 2; n <= 12; ++n) {
      if (trefoil && n % 6 == 0) continue;
      all.emplace_back(p, cyclic_cover_table(p, n));
    }
  }
  for (const auto& [p, t] : all) {
    const TorsionReport rep = torsion_report(cover_complex(p, t));
    const Rat product = rep.tau_h2 * rep.reg2;
    expect(rep.tau_rs2 == product, "identity fails on a cover complex");
  }
}

// Criterion 4: circle determinant of the meridian action three ways: cycle
// product, exact Gram, float SVD; plus pure l-cycles up to 50.
void criterion4(const std::vector<std::pair<GroupPresentation, CosetTable>>& covers) {
  auto check_perm = [](const std::vector<int>& perm) {
    const Int cycles = circle_det(perm);
    const Index n = static_cast<Index>(perm.size());
    MatZ one_minus_p = MatZ::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      one_minus_p(i, i) += 1;
      one_minus_p(i, perm[static_cast<size_t>(i)]) -= 1;
    }
    const Int gram = det_prime_squared(one_minus_p);
    const Int cycles2 = cycles * cycles;
    expect(gram == cycles2, "exact Gram disagrees with the cycle product");
    const double svd =
        det_prime_float(to_double(one_minus_p), rank(one_minus_p));
    expect(rel_err(svd, cycles.get_d()) <= 1e-9,
           "float determinant disagrees with the cycle product");
  };

  for (const auto& [p, t] : covers) {
    expect(p.meridian.has_value(), "missing meridian");
    check_perm(word_action(t, Word::generator(*p.meridian)));
  }
  for (int l = 2; l <= 50; ++l) {
    std::vector<int> cycle(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) cycle[static_cast<size_t>(i)] = (i + 1) % l;
    expect(circle_det(cycle) == l, "pure cycle determinant");
    check_perm(cycle);
  }
}

// Criterion 5: sqrt(det F_D) = det'(D) to 1e-9 on 100 seeded random integer
// matrices up to 8x8; density_log_det cross-validates its two integration
// routes internally to 1e-12 and throws on disagreement.
void criterion5() {
  std::mt19937_64 rng(0xACCE5502u);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const Index r = dim(rng), c = dim(rng);
    MatZ m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = entry(rng);
    const Index rk = rank(m);
    const double exact = std::sqrt(det_prime_squared(m).get_d());
    const double from_density =
        std::exp(0.5 * density_log_det(spectral_density(to_double(m), 1, rk)));
    expect(rel_err(from_density, exact) <= 1e-9,
           "density determinant drifts from the exact value");
    const double from_svd = det_prime_float(to_double(m), rk);
    expect(rel_err(from_svd, exact) <= 1e-9,
           "singular value determinant drifts from the exact value");
  }
}

// Criterion 6: figure-eight branched torsion converges to the Mahler measure.
void criterion6() {
  const LaurentPoly delta = abelianized_alexander(bundled("figure8"));
  const double log_mahler = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  const Int t100 = cyclic_branched_torsion(delta, 100);
  expect(t100 > 0, "vanishing torsion at n=100");
  expect(std::abs(log_int(t100) / 100.0 - log_mahler) <= 0.05,
         "n=100 log torsion too far from log Mahler");
  double sum = 0;
  for (int n = 90; n <= 100; ++n) {
    const Int tn = cyclic_branched_torsion(delta, n);
    expect(tn > 0, "vanishing torsion in the tail window");
    sum += log_int(tn) / static_cast<double>(n);
  }
  expect(std::abs(sum / 11.0 - log_mahler) <= 0.01,
         "windowed average drifts from log Mahler");
}

// Criterion 7: determinant trend of 1-a over the infinite cyclic group,
// cyclic quotients n = 2..64.
void criterion7() {
  const GroupPresentation unk = bundled("unknot");
  const GroupRingMatrix b = boundary_matrices(unk).d1;
  std::vector<CosetTable> tables;
  for (int n = 2; n <= 64; ++n) tables.push_back(cyclic_cover_table(unk, n));
  const FkReport rep = fk_report(b, tables);
  expect(rep.rows.size() == tables.size(), "missing rows");

  double min_density_log_det = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const long n = static_cast<long>(i) + 2;
    const Int n2 = Int(n) * Int(n);
    expect(rep.rows[i].det2 == n2, "determinant is not n^2 at n=" + std::to_string(n));
    const double ln_n_over_n = std::log(static_cast<double>(n)) / n;
    expect(std::abs(rep.rows[i].log_det_over_n - ln_n_over_n) <= 1e-12,
           "log determinant per level drifts from ln(n)/n");
    if (n >= 4)
      expect(rep.rows[i].log_det_over_n < rep.rows[i - 1].log_det_over_n,
             "ln(n)/n fails to decrease at n=" + std::to_string(n));
    min_density_log_det =
        std::min(min_density_log_det, density_log_det(rep.rows[i].density));
  }
  expect(rep.liminf_log_det <= min_density_log_det + 1e-12,
         "prefix liminf exceeds the sequence minimum");
}

// Criterion 8: the seeded selfcheck battery passes.
void criterion8() {
  const SelfcheckResult res = run_selfcheck(20260815u);
  for (const SelfcheckSuite& s : res.suites)
    expect(s.pass, "suite " + s.name + ": " + s.detail);
  expect(res.all_pass, "selfcheck reports failure");
}

}  // namespace

int main() {
  std::vector<std::pair<GroupPresentation, CosetTable>> covers;

  struct Criterion {
    int number;
    const char* label;
    std::function<void()> body;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "branched torsion equals the resultant oracle", criterion1, 30.0},
      {2, "cover torsion inequality at index <= 6",
       [&] { criterion2(covers); }, 300.0},
      {3, "torsion factorization identity", [&] { criterion3(covers); }, 0.0},
      {4, "circle determinant triple agreement", [&] { criterion4(covers); }, 0.0},
      {5, "density determinant of integer matrices", criterion5, 0.0},
      {6, "figure-eight Mahler convergence", criterion6, 10.0},
      {7, "cyclic determinant trend", criterion7, 0.0},
      {8, "selfcheck battery", criterion8, 600.0},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      c.body();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (failure.empty() && c.limit_seconds > 0 && elapsed > c.limit_seconds) {
      std::ostringstream over;
      over << "exceeded " << c.limit_seconds << "s budget";
      failure = over.str();
    }
    if (failure.empty()) {
      std::printf("criterion %d (%s): PASS (%.2fs)\n", c.number, c.label, elapsed);
    } else {
      std::printf("criterion %d (%s): FAIL (%.2fs) %s\n", c.number, c.label,
                  elapsed, failure.c_str());
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}
