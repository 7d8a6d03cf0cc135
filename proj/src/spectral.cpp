#include "torsionlab/spectral.hpp"

#include "torsionlab/complexes.hpp"
#include "torsionlab/zlinalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace torsionlab {

std::vector<double> singular_values(const MatD& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<MatD> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double operator_norm(const MatD& m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

double det_prime_float(const MatD& m, Index rank) {
  if (rank < 0 || rank > std::min(m.rows(), m.cols()))
    throw Error("det_prime_float: rank out of range");
  const auto sv = singular_values(m);
  double d = 1.0;
  for (Index i = 0; i < rank; ++i) d *= sv[static_cast<size_t>(i)];
  return d;
}

double StepDensity::eval(double lambda) const {
  if (lambda < 0) throw Error("StepDensity: negative argument");
  double v = value_at_zero;
  for (const auto& [l, m] : jumps) {
    if (l > lambda) break;
    v += m;
  }
  return v;
}

double StepDensity::total() const {
  double v = value_at_zero;
  for (const auto& [l, m] : jumps) v += m;
  return v;
}

StepDensity make_step_density(double value_at_zero,
                              std::vector<std::pair<double, double>> jumps,
                              double cutoff) {
  if (value_at_zero < 0) throw Error("StepDensity: negative value at zero");
  double prev = 0;
  for (const auto& [l, m] : jumps) {
    if (l <= prev) throw Error("StepDensity: jumps must be ascending and positive");
    if (m <= 0) throw Error("StepDensity: jump masses must be positive");
    prev = l;
  }
  if (cutoff < prev || cutoff < 0)
    throw Error("StepDensity: cutoff below the last jump");
  StepDensity f;
  f.value_at_zero = value_at_zero;
  f.jumps = std::move(jumps);
  f.cutoff = cutoff;
  return f;
}

StepDensity spectral_density(const MatD& m, long normalizer,
                             std::optional<Index> exact_rank) {
  if (normalizer <= 0) throw Error("spectral_density: normalizer must be positive");
  const Index n = m.rows();
  std::vector<double> evals;
  if (n > 0) {
    MatD gram = m * m.transpose();
    Eigen::SelfAdjointEigenSolver<MatD> es(gram, Eigen::EigenvaluesOnly);
    evals.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  }
  std::sort(evals.begin(), evals.end());
  Index zeros;
  if (exact_rank) {
    if (*exact_rank < 0 || *exact_rank > n)
      throw Error("spectral_density: rank out of range");
    zeros = n - *exact_rank;
    for (Index i = zeros; i < n; ++i)
      if (evals[static_cast<size_t>(i)] <= 0)
        throw Error("spectral_density: positive eigenvalue collapsed to zero");
  } else {
    zeros = 0;
    while (zeros < n && evals[static_cast<size_t>(zeros)] <= 0) ++zeros;
  }
  const double unit = 1.0 / static_cast<double>(normalizer);
  std::vector<std::pair<double, double>> jumps;
  for (Index i = zeros; i < n;) {
    Index j = i;
    while (j < n && evals[static_cast<size_t>(j)] == evals[static_cast<size_t>(i)]) ++j;
    jumps.emplace_back(evals[static_cast<size_t>(i)],
                       static_cast<double>(j - i) * unit);
    i = j;
  }
  const double cutoff = jumps.empty() ? 0.0 : jumps.back().first;
  return make_step_density(static_cast<double>(zeros) * unit, std::move(jumps), cutoff);
}

double density_log_det(const StepDensity& f) {
  // Route one: sum the jumps directly.
  double direct = 0;
  for (const auto& [l, m] : f.jumps) direct += m * std::log(l);
  // Route two: integrate by parts against the shifted distribution,
  // log(C) * (F(C) - F(0)) - int_0^C (F(t) - F(0))/t dt.
  double parts = 0;
  if (!f.jumps.empty()) {
    const double c = f.cutoff;
    double mass = 0;
    parts = (f.total() - f.value_at_zero) * std::log(c);
    for (size_t i = 0; i < f.jumps.size(); ++i) {
      mass += f.jumps[i].second;
      const double hi = i + 1 < f.jumps.size() ? f.jumps[i + 1].first : c;
      parts -= mass * (std::log(hi) - std::log(f.jumps[i].first));
    }
  }
  const double scale = std::max({1.0, std::abs(direct), std::abs(parts)});
  if (std::abs(direct - parts) > 1e-12 * scale)
    throw Error("density_log_det: integration routes disagree");
  return direct;
}

StepDensity pointwise_min(const std::vector<StepDensity>& fs) {
  if (fs.empty()) throw Error("pointwise_min: empty family");
  std::vector<double> breaks;
  double at0 = fs.front().value_at_zero;
  double cutoff = fs.front().cutoff;
  for (const StepDensity& f : fs) {
    at0 = std::min(at0, f.value_at_zero);
    cutoff = std::max(cutoff, f.cutoff);
    for (const auto& [l, m] : f.jumps) breaks.push_back(l);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<std::pair<double, double>> jumps;
  double prev = at0;
  for (double l : breaks) {
    double v = fs.front().eval(l);
    for (size_t i = 1; i < fs.size(); ++i) v = std::min(v, fs[i].eval(l));
    if (v > prev) jumps.emplace_back(l, v - prev);
    prev = v;
  }
  return make_step_density(at0, std::move(jumps), cutoff);
}

Int norm_bound(const GroupRingMatrix& b) {
  Int mx = 0;
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) mx = std::max(mx, b(i, j).l1_norm());
  return Int(b.rows()) * Int(b.cols()) * mx;
}

FkReport fk_report(const GroupRingMatrix& b, const std::vector<CosetTable>& tables) {
  if (tables.empty()) throw Error("fk_report: no tables");
  FkReport rep;
  std::vector<StepDensity> densities;
  for (const CosetTable& t : tables) {
    const MatZ bi = induce_matrix(b, t);
    FkRow row;
    row.index = t.index;
    row.det2 = det_prime_squared(bi);
    row.log_det_over_n = 0.5 * log_int(row.det2) / static_cast<double>(t.index);
    const Index r = rank(bi);
    row.density = spectral_density(to_double(bi), t.index, r);
    row.f_zero = row.density.value_at_zero;
    densities.push_back(row.density);
    rep.rows.push_back(std::move(row));
  }
  rep.liminf_density = pointwise_min(densities);
  rep.envelope_log_det = density_log_det(rep.liminf_density);
  rep.liminf_log_det = density_log_det(densities.front());
  for (const StepDensity& f : densities)
    rep.liminf_log_det = std::min(rep.liminf_log_det, density_log_det(f));
  return rep;
}

}  // namespace torsionlab
