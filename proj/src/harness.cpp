#include "torsionlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace torsionlab {

const std::map<std::string, std::string>& bundled_presentations() {
  static const std::map<std::string, std::string> presentations = {
      {"trefoil",
       "# Trefoil knot exterior, two-bridge form.\n"
       "generators: a b\n"
       "relators: a b a b^-1 a^-1 b^-1\n"
       "meridian: a\n"
       "volume: 0\n"},
      {"figure8",
       "# Figure-eight knot exterior as a once-punctured torus bundle,\n"
       "# stable letter m, fiber generators x and y.\n"
       "generators: x y m\n"
       "relators: m x m^-1 y^-1 x^-1 ; m y m^-1 y^-1 x^-1 y^-1\n"
       "meridian: m\n"
       "volume: 2.029883212819\n"},
      {"unknot",
       "# Unknot exterior (solid torus).\n"
       "generators: a\n"
       "relators:\n"
       "meridian: a\n"
       "volume: 0\n"}};
  return presentations;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_int(const Int& v) { return v.get_str(); }

std::string format_rat(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

constexpr double kSixPi = 6.0 * M_PI;

void run_tasks(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  const int workers = std::max(1, jobs);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ResultRow make_result_row(const GroupPresentation& p, const CosetTable& t,
                          std::string id, std::string kind) {
  const CoverInequalityReport rep = cover_inequality_report(p, t);
  ResultRow row;
  row.id = std::move(id);
  row.kind = std::move(kind);
  row.index = rep.index;
  row.b1 = rep.b1;
  row.t1 = rep.t1;
  row.ln_t1_over_n = log_int(rep.t1) / static_cast<double>(rep.index);
  row.det2_jacobian = rep.det2_jacobian;
  row.ln_det_jacobian_over_n =
      0.5 * log_int(rep.det2_jacobian) / static_cast<double>(rep.index);
  row.det2_beta = rep.det2_beta;
  row.ineq_ok = rep.ok;
  if (p.meridian) {
    const BranchedHomology bh = branched_homology(p, t);
    row.branched_torsion = bh.torsion;
    row.branched_free_rank = bh.free_rank;
    row.meridian_trace = normalized_trace(t, Word::generator(*p.meridian));
  }
  return row;
}

void fill_max(std::optional<double>& slot, double v) {
  if (!slot || v > *slot) slot = v;
}

}  // namespace

ExperimentResult run_experiment(const GroupPresentation& p, const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.presentation = p;
  const PresentationShape sh = shape(p);

  std::optional<double> vol = cfg.volume ? cfg.volume : p.volume;
  if (vol) result.summary.volume_reference = *vol / kSixPi;
  result.summary.notes.push_back(
      "assumes every nontrivial group element has infinite order (not verified)");
  if (vol && sh == PresentationShape::KnotExterior)
    result.summary.notes.push_back(
        "vol/(6 pi) is an asymptotic reference; finite-index rows may exceed it");

  LowIndexOptions opts;
  opts.node_budget = cfg.node_budget;
  opts.expand_conjugates = cfg.expand_conjugates;
  const std::vector<CosetTable> tables = low_index_tables(p, cfg.max_index, opts);

  if (sh == PresentationShape::Closed) {
    result.closed_rows.resize(tables.size());
    run_tasks(tables.size(), cfg.jobs, [&](std::size_t i) {
      ClosedRow row;
      row.id = "L" + std::to_string(i + 1);
      row.index = tables[i].index;
      try {
        const ClosedCoverReport rep = closed_cover_report(p, tables[i]);
        row.betti = rep.torsion.betti;
        row.torsion = rep.torsion.torsion;
        row.tau_rs2 = rep.torsion.tau_rs2;
        row.rhs2 = rep.rhs2;
        row.ratio2 = rep.ratio2;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      result.closed_rows[i] = std::move(row);
    });
    for (const ClosedRow& row : result.closed_rows)
      if (!row.error.empty())
        result.summary.notes.push_back("row " + row.id + " failed: " + row.error);
    result.summary.notes.push_back(
        "closed input: squared determinant identity ratio reported per cover");
    return result;
  }

  int cyclic_nmax = cfg.cyclic_nmax < 0 ? cfg.max_index : cfg.cyclic_nmax;
  std::vector<CosetTable> cyclic_tables;
  try {
    for (int n = 1; n <= cyclic_nmax; ++n)
      cyclic_tables.push_back(cyclic_cover_table(p, n));
  } catch (const Error& e) {
    cyclic_tables.clear();
    result.summary.notes.push_back(std::string("cyclic tower skipped: ") + e.what());
  }

  result.rows.resize(tables.size() + cyclic_tables.size());
  run_tasks(result.rows.size(), cfg.jobs, [&](std::size_t i) {
    const bool from_tower = i >= tables.size();
    const std::size_t k = from_tower ? i - tables.size() : i;
    const CosetTable& t = from_tower ? cyclic_tables[k] : tables[k];
    const std::string id = (from_tower ? "C" : "L") + std::to_string(k + 1);
    const std::string kind = from_tower ? "cyclic" : "lowindex";
    try {
      result.rows[i] = make_result_row(p, t, id, kind);
    } catch (const std::exception& e) {
      ResultRow row;
      row.id = id;
      row.kind = kind;
      row.index = t.index;
      row.error = e.what();
      result.rows[i] = std::move(row);
    }
  });

  for (const ResultRow& row : result.rows)
    if (!row.error.empty())
      result.summary.notes.push_back("row " + row.id + " failed: " + row.error);

  for (const ResultRow& row : result.rows) {
    if (!row.error.empty()) continue;
    if (row.kind == "lowindex") {
      fill_max(result.summary.max_ln_t1_lowindex, row.ln_t1_over_n);
      fill_max(result.summary.max_ln_det_lowindex, row.ln_det_jacobian_over_n);
    } else {
      fill_max(result.summary.max_ln_t1_cyclic, row.ln_t1_over_n);
      fill_max(result.summary.max_ln_det_cyclic, row.ln_det_jacobian_over_n);
    }
  }

  try {
    result.summary.log_mahler = std::log(mahler_measure(abelianized_alexander(p)));
    if (!cyclic_tables.empty())
      result.summary.notes.push_back(
          "cyclic rows do not trace-converge to the trivial group; their torsion "
          "growth reference is ln Mahler, not vol/(6 pi)");
  } catch (const Error& e) {
    result.summary.notes.push_back(std::string("Mahler reference skipped: ") + e.what());
  }
  return result;
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream os;
  if (!r.closed_rows.empty() || (r.rows.empty() && !r.presentation.duals.empty())) {
    os << "id,index,betti,torsion,tau_rs2,rhs2,ratio2,error\n";
    for (const ClosedRow& row : r.closed_rows) {
      os << row.id << ',' << row.index << ',';
      if (row.error.empty()) {
        for (std::size_t k = 0; k < row.betti.size(); ++k)
          os << (k ? ";" : "") << row.betti[k];
        os << ',';
        for (std::size_t k = 0; k < row.torsion.size(); ++k)
          os << (k ? ";" : "") << format_int(row.torsion[k]);
        os << ',' << format_rat(row.tau_rs2) << ',' << format_rat(row.rhs2) << ','
           << format_rat(row.ratio2) << ',';
      } else {
        os << ",,,,,";
      }
      os << row.error << '\n';
    }
    return os.str();
  }
  os << "id,kind,index,b1,t1,ln_t1_over_n,det2_jacobian,ln_det_jacobian_over_n,"
        "det2_beta,ineq_ok,branched_torsion,branched_free_rank,meridian_trace,"
        "vol_over_6pi,error\n";
  for (const ResultRow& row : r.rows) {
    os << row.id << ',' << row.kind << ',' << row.index << ',';
    if (row.error.empty()) {
      os << row.b1 << ',' << format_int(row.t1) << ','
         << format_double(row.ln_t1_over_n) << ',' << format_int(row.det2_jacobian)
         << ',' << format_double(row.ln_det_jacobian_over_n) << ','
         << format_rat(row.det2_beta) << ',' << (row.ineq_ok ? 1 : 0) << ',';
      if (row.branched_torsion) os << format_int(*row.branched_torsion);
      os << ',';
      if (row.branched_free_rank) os << *row.branched_free_rank;
      os << ',';
      if (row.meridian_trace) os << format_rat(*row.meridian_trace);
      os << ',';
      if (r.summary.volume_reference) os << format_double(*r.summary.volume_reference);
      os << ',';
    } else {
      os << ",,,,,,,,,,,";
    }
    os << row.error << '\n';
  }
  return os.str();
}

std::string summary_text(const ExperimentResult& r) {
  std::ostringstream os;
  os << "covers: " << r.rows.size() + r.closed_rows.size() << " (";
  std::size_t lowindex = r.closed_rows.size();
  for (const ResultRow& row : r.rows)
    if (row.kind == "lowindex") ++lowindex;
  os << lowindex << " low-index, " << r.rows.size() + r.closed_rows.size() - lowindex
     << " cyclic)\n";
  if (r.summary.volume_reference)
    os << "volume reference vol/(6 pi) = " << format_double(*r.summary.volume_reference)
       << '\n';
  if (r.summary.max_ln_t1_lowindex)
    os << "max ln t1 / n over low-index covers = "
       << format_double(*r.summary.max_ln_t1_lowindex) << '\n';
  if (r.summary.max_ln_det_lowindex)
    os << "max ln det'(J) / n over low-index covers = "
       << format_double(*r.summary.max_ln_det_lowindex) << '\n';
  if (r.summary.max_ln_t1_cyclic)
    os << "max ln t1 / n over cyclic covers = "
       << format_double(*r.summary.max_ln_t1_cyclic) << '\n';
  if (r.summary.max_ln_det_cyclic)
    os << "max ln det'(J) / n over cyclic covers = "
       << format_double(*r.summary.max_ln_det_cyclic) << '\n';
  if (r.summary.log_mahler)
    os << "cyclic tower reference ln Mahler(Delta) = "
       << format_double(*r.summary.log_mahler) << '\n';
  for (const std::string& note : r.summary.notes) os << "note: " << note << '\n';
  return os.str();
}

std::string to_csv(const GrowthReport& r) {
  std::ostringstream os;
  os << "n,torsion,betti_jump,ln_torsion_over_n,ln_mahler_ref\n";
  for (const GrowthRow& row : r.rows) {
    os << row.n << ',' << format_int(row.torsion) << ',' << (row.betti_jump ? 1 : 0)
       << ',';
    if (row.log_torsion_over_n) os << format_double(*row.log_torsion_over_n);
    os << ',' << format_double(r.log_mahler) << '\n';
  }
  return os.str();
}

std::string to_csv(const FkReport& r) {
  std::ostringstream os;
  os << "index,det2,ln_det_over_n,f_zero,density_ln_det\n";
  for (const FkRow& row : r.rows) {
    os << row.index << ',' << format_int(row.det2) << ','
       << format_double(row.log_det_over_n) << ',' << format_double(row.f_zero) << ','
       << format_double(density_log_det(row.density)) << '\n';
  }
  os << "liminf,," << format_double(0.5 * r.liminf_log_det) << ','
     << format_double(r.liminf_density.value_at_zero) << ','
     << format_double(r.liminf_log_det) << '\n';
  os << "envelope,,," << format_double(r.liminf_density.value_at_zero) << ','
     << format_double(r.envelope_log_det) << '\n';
  return os.str();
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw Error("config line " + std::to_string(line_no) + ": empty key");
    out[key] = value;
  }
  return out;
}

}  // namespace torsionlab
