#include "torsionlab/abelian.hpp"

#include "torsionlab/zlinalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace torsionlab {

namespace {

std::vector<Int> trimmed(std::vector<Int> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

}  // namespace

Int resultant(const std::vector<Int>& f_in, const std::vector<Int>& g_in) {
  const std::vector<Int> f = trimmed(f_in), g = trimmed(g_in);
  if (f.empty() || g.empty()) throw Error("resultant: zero polynomial");
  const Index m = static_cast<Index>(f.size()) - 1;
  const Index n = static_cast<Index>(g.size()) - 1;
  if (m == 0 && n == 0) return 1;
  MatZ s = MatZ::Zero(m + n, m + n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k <= m; ++k) s(i, i + k) = f[static_cast<size_t>(m - k)];
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k <= n; ++k) s(n + i, i + k) = g[static_cast<size_t>(n - k)];
  return bareiss_det(std::move(s));
}

Int cyclic_branched_torsion(const LaurentPoly& delta, long n) {
  if (n < 1) throw Error("cyclic_branched_torsion: n must be positive");
  if (delta.is_zero()) throw Error("cyclic_branched_torsion: zero polynomial");
  std::vector<Int> f = delta.shifted_coeffs();
  std::vector<Int> g(static_cast<size_t>(n) + 1, Int(0));
  g.front() = -1;
  g.back() = 1;
  Int r = abs(resultant(f, g));
  if (r == 0) return 0;
  Int d1 = abs(delta.eval(Int(1)));
  if (d1 == 0 || r % d1 != 0)
    throw Error("cyclic_branched_torsion: resultant not divisible by |Delta(1)|");
  return r / d1;
}

double mahler_measure(const LaurentPoly& f) {
  if (f.is_zero()) throw Error("mahler_measure: zero polynomial");
  const std::vector<Int> c = f.shifted_coeffs();
  const size_t d = c.size() - 1;
  const double lead = std::abs(c.back().get_d());
  if (d == 0) return lead;
  MatD comp = MatD::Zero(static_cast<Index>(d), static_cast<Index>(d));
  for (size_t i = 1; i < d; ++i) comp(static_cast<Index>(i), static_cast<Index>(i) - 1) = 1.0;
  for (size_t i = 0; i < d; ++i)
    comp(static_cast<Index>(i), static_cast<Index>(d) - 1) =
        -c[i].get_d() / c.back().get_d();
  Eigen::EigenSolver<MatD> es(comp, false);
  double mu = lead;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    mu *= std::max(1.0, std::abs(es.eigenvalues()[i]));
  return mu;
}

GrowthReport growth_report(const GroupPresentation& p, long max_n) {
  if (max_n < 2) throw Error("growth_report: max_n must be at least 2");
  GrowthReport rep;
  rep.alexander = abelianized_alexander(p);
  rep.mahler = mahler_measure(rep.alexander);
  rep.log_mahler = std::log(rep.mahler);
  rep.rows.reserve(static_cast<size_t>(max_n - 1));
  for (long n = 2; n <= max_n; ++n) {
    GrowthRow row;
    row.n = n;
    row.torsion = cyclic_branched_torsion(rep.alexander, n);
    row.betti_jump = row.torsion == 0;
    if (!row.betti_jump && row.torsion > 0)
      row.log_torsion_over_n = log_int(row.torsion) / static_cast<double>(n);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace torsionlab
