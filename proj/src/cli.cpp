#include "eeio/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "eeio/report.hpp"
#include "eeio/synth.hpp"
#include "eeio/table_io.hpp"

namespace eeio::cli {

namespace {

struct TableOptions {
  std::string table;
  bool allow_negative_v = false;
  bool drop_zero_sectors = false;
  double balance_tol = 1e-6;

  BuildPolicy policy() const {
    BuildPolicy p;
    p.tol_rel = balance_tol;
    p.allow_negative_value_added = allow_negative_v;
    p.drop_zero_sectors = drop_zero_sectors;
    return p;
  }
};

void add_table_options(CLI::App* cmd, TableOptions& opts) {
  cmd->add_option("table", opts.table, "Input-output table (CSV)")->required();
  cmd->add_flag("--allow-negative-v", opts.allow_negative_v, "Accept negative value added");
  cmd->add_flag("--drop-zero-sectors", opts.drop_zero_sectors,
                "Drop isolated sectors with zero total output");
}

void emit(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

nlohmann::json warnings_for(const LeontiefSolver& solver) {
  nlohmann::json warnings = nlohmann::json::array();
  if (solver.ill_conditioned()) {
    warnings.push_back("I - A is ill-conditioned (rcond " + std::to_string(solver.rcond()) + ")");
  }
  return warnings;
}

int run_validate(const TableOptions& opts, std::ostream& out) {
  try {
    const Economy econ = parse_table(opts.table, opts.policy());
    const BalanceReport report = validate_balance(econ, opts.balance_tol);
    emit(out, {{"sectors", econ.sectors},
               {"dropped_sectors", econ.dropped_sectors},
               {"balance", to_json(report)}});
    return report.ok ? kSuccess : kDataFailure;
  } catch (const ImbalancedTableError& e) {
    emit(out, {{"balance", to_json(e.report())}});
    throw;
  }
}

int run_intensity(const TableOptions& opts, const std::string& emissions,
                  const std::string& method, double tol, std::ostream& out) {
  const Economy econ = parse_table(opts.table, opts.policy());
  const EmissionAccount acct = parse_emissions(emissions, econ);
  const IntensityVector direct = direct_intensity(econ, acct);
  const CoefficientMatrix a = technical_coefficients(econ);

  nlohmann::json doc = {{"method", method}, {"direct", to_json(direct, econ)}};
  if (method == "neumann") {
    NeumannOptions options;
    options.tol = tol;
    const NeumannResult result = total_intensity_neumann(direct, a, options);
    doc["total"] = to_json(result.intensity, econ);
    doc["terms_used"] = result.terms_used;
    doc["warnings"] = nlohmann::json::array();
  } else {
    const LeontiefSolver solver(a.values());
    doc["total"] = to_json(total_intensity(direct, solver), econ);
    doc["rcond"] = solver.rcond();
    doc["warnings"] = warnings_for(solver);
  }
  emit(out, doc);
  return kSuccess;
}

int run_attribute(const TableOptions& opts, const std::string& emissions,
                  const std::string& basis, std::ostream& out) {
  const Economy econ = parse_table(opts.table, opts.policy());
  const EmissionAccount acct = parse_emissions(emissions, econ);
  const IntensityVector direct = direct_intensity(econ, acct);

  AttributionReport report;
  nlohmann::json doc = {{"basis", basis}, {"emission_unit", acct.emission_unit}};
  if (basis == "value-added") {
    report = attribute_to_value_added(systemic_intensity(direct, allocation_coefficients(econ)),
                                      econ.value_added, acct);
  } else {
    const CoefficientMatrix a = technical_coefficients(econ);
    const LeontiefSolver solver(a.values());
    report = attribute_to_demand(total_intensity(direct, solver), econ.demand, acct);
    doc["direct_footprint"] = consumer_direct_footprint(direct, econ.demand);
    doc["warnings"] = warnings_for(solver);
  }
  doc["attribution"] = to_json(report, econ);
  emit(out, doc);
  return report.conservation_residual > kAttributeResidualLimit ? kDataFailure : kSuccess;
}

int run_perturb(const TableOptions& opts, double epsilon, std::size_t samples,
                std::uint64_t seed, unsigned threads, std::ostream& out) {
  const Economy econ = parse_table(opts.table, opts.policy());
  const CoefficientMatrix a = technical_coefficients(econ);
  const PerturbationReport report = perturb_inverse(a, epsilon, samples, seed, threads);
  emit(out, {{"perturbation", to_json(report)}, {"spectral", to_json(spectral_radius(a))}});
  return kSuccess;
}

int run_generate(const GeneratorConfig& cfg, const std::string& dir, std::ostream& out) {
  const auto [econ, acct] = generate_economy(cfg);
  const std::filesystem::path root(dir);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir + "': " + ec.message());
  const auto table = root / "table.csv";
  const auto emissions = root / "emissions.csv";
  write_table(table, econ);
  write_emissions(emissions, econ, acct);
  emit(out, {{"table", table.string()},
             {"emissions", emissions.string()},
             {"n", cfg.n},
             {"seed", cfg.seed}});
  return kSuccess;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Environmentally-extended input-output footprint analysis", "eeio"};
  app.require_subcommand(1);

  TableOptions table_opts;
  std::string emissions;
  std::string method = "solve";
  std::string basis = "demand";
  double tol = 1e-10;
  double epsilon = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  GeneratorConfig gen;
  std::string out_dir;

  auto* validate = app.add_subcommand("validate", "Check the balance identities of a table");
  add_table_options(validate, table_opts);
  validate->add_option("--tol", table_opts.balance_tol, "Relative balance tolerance")
      ->check(CLI::PositiveNumber);

  auto* intensity = app.add_subcommand("intensity", "Direct and total emission intensities");
  add_table_options(intensity, table_opts);
  intensity->add_option("emissions", emissions, "Emission account (CSV)")->required();
  intensity->add_option("--method", method, "solve or neumann")
      ->check(CLI::IsMember({"solve", "neumann"}));
  intensity->add_option("--tol", tol, "Neumann series tolerance")->check(CLI::PositiveNumber);

  auto* attribute = app.add_subcommand("attribute", "Attribute emissions to final demand or value added");
  add_table_options(attribute, table_opts);
  attribute->add_option("emissions", emissions, "Emission account (CSV)")->required();
  attribute->add_option("--basis", basis, "demand or value-added")
      ->check(CLI::IsMember({"demand", "value-added"}));

  auto* perturb = app.add_subcommand("perturb", "Sensitivity of the Leontief inverse");
  add_table_options(perturb, table_opts);
  perturb->add_option("--epsilon", epsilon, "Entrywise perturbation bound")
      ->required()
      ->check(CLI::PositiveNumber);
  perturb->add_option("--samples", samples, "Random draws")->required();
  perturb->add_option("--seed", seed, "RNG seed")->required();
  perturb->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* generate = app.add_subcommand("generate", "Write a synthetic balanced table and emissions");
  generate->add_option("--n", gen.n, "Sector count")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "RNG seed")->required();
  generate->add_option("--out", out_dir, "Output directory")->required();
  generate->add_option("--cap", gen.column_sum_cap, "Column-sum cap of A")
      ->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*validate) return run_validate(table_opts, out);
    if (*intensity) return run_intensity(table_opts, emissions, method, tol, out);
    if (*attribute) return run_attribute(table_opts, emissions, basis, out);
    if (*perturb) return run_perturb(table_opts, epsilon, samples, seed, threads, out);
    if (*generate) return run_generate(gen, out_dir, out);
  } catch (const Error& e) {
    err << error_to_json(e).dump(2) << '\n';
    return kDataFailure;
  }
  return kUsage;
}

}  // namespace eeio::cli
