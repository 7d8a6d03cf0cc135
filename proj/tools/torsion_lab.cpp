#include "torsionlab/harness.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace torsionlab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupPresentation load_presentation(const std::string& name_or_path) {
  const auto& bundle = bundled_presentations();
  if (const auto it = bundle.find(name_or_path); it != bundle.end())
    return parse_presentation(it->second);
  return parse_presentation(read_file(name_or_path));
}

/// CSV goes to --out when given, else stdout; the summary goes to the channel
/// the CSV left free.
void emit(const std::string& csv, const std::string& summary,
          const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    if (!summary.empty()) std::cerr << summary;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write " + out_path);
  out << csv;
  if (!summary.empty()) std::cout << summary;
}

const std::string* config_value(const std::map<std::string, std::string>& conf,
                                const char* key, const CLI::Option* flag) {
  const auto it = conf.find(key);
  if (it == conf.end()) return nullptr;
  if (flag != nullptr && flag->count() > 0) return nullptr;
  return &it->second;
}

long parse_long(const std::string& v, const char* key) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw Error("");
    return x;
  } catch (...) {
    throw Error(std::string("config key ") + key + ": expected an integer, got '" +
                v + "'");
  }
}

bool parse_bool(const std::string& v, const char* key) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw Error(std::string("config key ") + key + ": expected a boolean, got '" + v +
              "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homology torsion of finite covers of presented 3-manifold groups"};
  app.require_subcommand(1);

  std::string check_pres, check_config, check_out;
  ExperimentConfig check_cfg;
  double check_volume = 0;
  CLI::App* check = app.add_subcommand(
      "check", "low-index and cyclic covers: torsion against exact determinants");
  CLI::Option* check_pres_opt = check->add_option(
      "presentation", check_pres, "presentation file or bundled name");
  CLI::Option* check_maxindex_opt = check->add_option(
      "--max-index", check_cfg.max_index, "largest subgroup index to enumerate");
  CLI::Option* check_nmax_opt =
      check->add_option("--cyclic-nmax", check_cfg.cyclic_nmax,
                        "cyclic tower height; -1 follows --max-index");
  CLI::Option* check_volume_opt = check->add_option(
      "--volume", check_volume, "reference volume, overrides the file value");
  CLI::Option* check_out_opt = check->add_option("--out", check_out, "CSV output path");
  CLI::Option* check_jobs_opt =
      check->add_option("--jobs", check_cfg.jobs, "worker threads");
  CLI::Option* check_conj_opt =
      check->add_flag("--expand-conjugates", check_cfg.expand_conjugates,
                      "emit every subgroup instead of one per conjugacy class");
  CLI::Option* check_budget_opt = check->add_option(
      "--node-budget", check_cfg.node_budget, "low-index search node budget");
  check->add_option("--config", check_config, "key = value defaults; flags override");

  std::string cyclic_pres, cyclic_config, cyclic_out;
  long cyclic_maxn = 0;
  CLI::App* cyclic =
      app.add_subcommand("cyclic", "branched cyclic cover torsion growth");
  CLI::Option* cyclic_pres_opt = cyclic->add_option(
      "presentation", cyclic_pres, "presentation file or bundled name");
  CLI::Option* cyclic_maxn_opt =
      cyclic->add_option("--max-n", cyclic_maxn, "largest cover degree");
  CLI::Option* cyclic_out_opt =
      cyclic->add_option("--out", cyclic_out, "CSV output path");
  cyclic->add_option("--config", cyclic_config, "key = value defaults; flags override");

  std::string density_pres, density_config, density_out;
  std::string density_tower = "cyclic";
  std::string density_matrix = "jacobian";
  long density_maxn = 0;
  CLI::App* density = app.add_subcommand(
      "density", "finite-quotient spectral densities and the determinant trend");
  CLI::Option* density_pres_opt = density->add_option(
      "presentation", density_pres, "presentation file or bundled name");
  CLI::Option* density_tower_opt =
      density->add_option("--tower", density_tower, "cover family to walk")
          ->check(CLI::IsMember({"cyclic"}));
  CLI::Option* density_maxn_opt =
      density->add_option("--max-n", density_maxn, "largest cover degree");
  CLI::Option* density_matrix_opt =
      density->add_option("--matrix", density_matrix, "group-ring matrix to induce")
          ->check(CLI::IsMember({"jacobian", "d1", "d2"}));
  CLI::Option* density_out_opt =
      density->add_option("--out", density_out, "CSV output path");
  density->add_option("--config", density_config,
                      "key = value defaults; flags override");

  uint64_t seed = 0;
  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "deterministic invariant battery, all modules");
  selfcheck->add_option("--seed", seed, "base RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) {
      bool volume_given = check_volume_opt->count() > 0;
      if (!check_config.empty()) {
        const auto conf = parse_config(read_file(check_config));
        if (const auto* v = config_value(conf, "presentation", check_pres_opt))
          check_pres = *v;
        if (const auto* v = config_value(conf, "max_index", check_maxindex_opt))
          check_cfg.max_index = static_cast<int>(parse_long(*v, "max_index"));
        if (const auto* v = config_value(conf, "cyclic_nmax", check_nmax_opt))
          check_cfg.cyclic_nmax = static_cast<int>(parse_long(*v, "cyclic_nmax"));
        if (const auto* v = config_value(conf, "volume", check_volume_opt)) {
          check_volume = std::stod(*v);
          volume_given = true;
        }
        if (const auto* v = config_value(conf, "jobs", check_jobs_opt))
          check_cfg.jobs = static_cast<int>(parse_long(*v, "jobs"));
        if (const auto* v =
                config_value(conf, "expand_conjugates", check_conj_opt))
          check_cfg.expand_conjugates = parse_bool(*v, "expand_conjugates");
        if (const auto* v = config_value(conf, "node_budget", check_budget_opt))
          check_cfg.node_budget = parse_long(*v, "node_budget");
        if (const auto* v = config_value(conf, "out", check_out_opt)) check_out = *v;
      }
      if (check_pres.empty()) throw Error("check: no presentation given");
      if (check_cfg.max_index < 1) throw Error("check: max_index must be >= 1");
      if (volume_given) check_cfg.volume = check_volume;
      const ExperimentResult result =
          run_experiment(load_presentation(check_pres), check_cfg);
      emit(to_csv(result), summary_text(result), check_out);
      return 0;
    }

    if (app.got_subcommand(cyclic)) {
      if (!cyclic_config.empty()) {
        const auto conf = parse_config(read_file(cyclic_config));
        if (const auto* v = config_value(conf, "presentation", cyclic_pres_opt))
          cyclic_pres = *v;
        if (const auto* v = config_value(conf, "max_n", cyclic_maxn_opt))
          cyclic_maxn = parse_long(*v, "max_n");
        if (const auto* v = config_value(conf, "out", cyclic_out_opt)) cyclic_out = *v;
      }
      if (cyclic_pres.empty()) throw Error("cyclic: no presentation given");
      if (cyclic_maxn < 2) throw Error("cyclic: --max-n must be >= 2");
      const GroupPresentation p = load_presentation(cyclic_pres);
      const GrowthReport report = growth_report(p, cyclic_maxn);
      std::ostringstream summary;
      summary << "Alexander polynomial: " << report.alexander.str() << '\n'
              << "Mahler measure " << format_double(report.mahler) << ", ln "
              << format_double(report.log_mahler) << '\n';
      emit(to_csv(report), summary.str(), cyclic_out);
      return 0;
    }

    if (app.got_subcommand(density)) {
      if (!density_config.empty()) {
        const auto conf = parse_config(read_file(density_config));
        if (const auto* v = config_value(conf, "presentation", density_pres_opt))
          density_pres = *v;
        if (const auto* v = config_value(conf, "max_n", density_maxn_opt))
          density_maxn = parse_long(*v, "max_n");
        if (const auto* v = config_value(conf, "tower", density_tower_opt))
          density_tower = *v;
        if (const auto* v = config_value(conf, "matrix", density_matrix_opt))
          density_matrix = *v;
        if (const auto* v = config_value(conf, "out", density_out_opt))
          density_out = *v;
      }
      if (density_pres.empty()) throw Error("density: no presentation given");
      if (density_maxn < 1) throw Error("density: --max-n must be >= 1");
      if (density_tower != "cyclic")
        throw Error("density: unknown tower '" + density_tower + "'");
      const GroupPresentation p = load_presentation(density_pres);
      GroupRingMatrix b;
      if (density_matrix == "jacobian") {
        b = reduced_jacobian(p).J;
      } else if (density_matrix == "d1") {
        b = boundary_matrices(p).d1;
      } else {
        b = boundary_matrices(p).d2;
      }
      std::vector<CosetTable> tables;
      for (long n = 1; n <= density_maxn; ++n)
        tables.push_back(cyclic_cover_table(p, static_cast<int>(n)));
      const FkReport report = fk_report(b, tables);
      std::ostringstream summary;
      summary << "liminf of the density log determinants: "
              << format_double(report.liminf_log_det) << '\n'
              << "lower envelope mass at zero: "
              << format_double(report.liminf_density.value_at_zero) << '\n'
              << "lower envelope log determinant: "
              << format_double(report.envelope_log_det) << '\n';
      emit(to_csv(report), summary.str(), density_out);
      return 0;
    }

    const SelfcheckResult result = run_selfcheck(seed, &std::cout);
    std::cout << (result.all_pass ? "selfcheck: all suites passed"
                                  : "selfcheck: FAILURES above")
              << '\n';
    return result.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
