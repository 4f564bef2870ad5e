// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Thresholds are fixed here and never tuned at run time.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eeio/cli.hpp"
#include "eeio/leontief.hpp"
#include "eeio/sensitivity.hpp"
#include "eeio/synth.hpp"
#include "eeio/table_io.hpp"
#include "test_support.hpp"

using namespace eeio;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kFirstSeed = 1;
constexpr std::uint64_t kLastSeed = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name;
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
  if (!o.pass) ++failures;
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

struct CorpusEntry {
  Economy econ;
  EmissionAccount acct;
};

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> corpus;
  for (std::uint64_t s = kFirstSeed; s <= kLastSeed; ++s) {
    auto [econ, acct] = fixtures::corpus_economy(s);
    corpus.push_back({std::move(econ), std::move(acct)});
  }
  return corpus;
}

Outcome conservation(const std::vector<CorpusEntry>& corpus) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& [econ, acct] : corpus) {
    const IntensityVector x = total_intensity(direct_intensity(econ, acct), technical_coefficients(econ));
    worst = std::max(worst, attribute_to_demand(x, econ.demand, acct).conservation_residual);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-10 && seconds < 10.0,
          "max residual " + sci(worst) + " (limit 1e-10), " + std::to_string(seconds) + " s (limit 10 s)"};
}

Outcome dual_conservation(const std::vector<CorpusEntry>& corpus) {
  double worst = 0.0;
  for (const auto& [econ, acct] : corpus) {
    const IntensityVector y = systemic_intensity(direct_intensity(econ, acct), allocation_coefficients(econ));
    worst = std::max(worst, attribute_to_value_added(y, econ.value_added, acct).conservation_residual);
  }
  const Economy econ = fixtures::worked_economy();
  const EmissionAccount acct = fixtures::worked_emissions(econ);
  const IntensityVector literal =
      systemic_intensity_literal(direct_intensity(econ, acct), technical_coefficients(econ));
  const AttributionReport r = attribute_to_value_added(literal, econ.value_added, acct);
  // the residual is exactly 4/30 = 0.13333...; 0.1333 is its four-digit rounding
  const bool counterexample = std::abs(r.total_attributed - 34.0) <= 1e-9 &&
                              r.total_emissions == 30.0 &&
                              std::abs(r.conservation_residual - 4.0 / 30.0) <= 1e-6;
  return {worst <= 1e-10 && counterexample,
          "corpus max residual " + sci(worst) + "; literal A^T total " + std::to_string(r.total_attributed) +
              " vs |E| " + std::to_string(r.total_emissions) + ", residual " +
              std::to_string(r.conservation_residual)};
}

Outcome oracle_equivalence(const std::vector<CorpusEntry>& corpus) {
  double worst = 0.0;
  NeumannOptions opt;
  opt.tol = 1e-10;
  for (const auto& [econ, acct] : corpus) {
    const IntensityVector f = direct_intensity(econ, acct);
    const CoefficientMatrix a = technical_coefficients(econ);
    const IntensityVector solved = total_intensity(f, a);
    const NeumannResult series = total_intensity_neumann(f, a, opt);
    worst = std::max(worst, (solved.values - series.intensity.values).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-9, "max sup-norm gap " + sci(worst) + " (limit 1e-9)"};
}

Outcome proof_identity(const std::vector<CorpusEntry>& corpus) {
  double worst = 0.0;
  for (const auto& [econ, acct] : corpus) {
    worst = std::max(worst, demand_identity_residual(econ, technical_coefficients(econ)));
  }
  return {worst <= 1e-12, "max ||D-(I-A)T||/||D|| " + sci(worst) + " (limit 1e-12)"};
}

Outcome worked_example() {
  const Economy econ = fixtures::worked_economy();
  const EmissionAccount acct = fixtures::worked_emissions(econ);
  const CoefficientMatrix a = technical_coefficients(econ);
  Matrix a_expected(2, 2);
  a_expected << 0.5, 0.5, 0.15, 0.2;
  const IntensityVector f = direct_intensity(econ, acct);
  const IntensityVector x = total_intensity(f, a);
  const IntensityVector y = systemic_intensity(f, allocation_coefficients(econ));
  const double xd = attribute_to_demand(x, econ.demand, acct).total_attributed;
  const double yv = attribute_to_value_added(y, econ.value_added, acct).total_attributed;

  bool ok = (a.values() - a_expected).cwiseAbs().maxCoeff() <= 1e-15;
  ok = ok && std::abs(f.values(0) - 0.1) <= 1e-15 && std::abs(f.values(1) - 0.1) <= 1e-15;
  ok = ok && std::abs(x.values(0) - 0.292308) <= 1e-6 && std::abs(x.values(1) - 0.307692) <= 1e-6;
  ok = ok && std::abs(xd - 30.0) <= 1e-9;
  ok = ok && std::abs(y.values(0) - 0.323077) <= 1e-6 && std::abs(y.values(1) - 0.246154) <= 1e-6;
  ok = ok && std::abs(yv - 30.0) <= 1e-9;
  std::ostringstream os;
  os << std::setprecision(7) << "X=[" << x.values(0) << ", " << x.values(1) << "] <X,D>=" << xd << " Y=["
     << y.values(0) << ", " << y.values(1) << "] <Y,V>=" << yv;
  return {ok, os.str()};
}

Outcome instability() {
  const double eps = 0.005;
  const auto points = amplification_curve({0.5, 0.9}, eps);
  // 105.26 is the two-decimal rounding of 105.263157...; both points are
  // held to 1e-4 against the closed form and to their printed precision
  bool ok = std::abs(points[0].second - 1.0 / (0.5 * 0.495)) <= 1e-4 &&
            std::abs(points[1].second - 1.0 / (0.1 * 0.095)) <= 1e-4;
  ok = ok && std::abs(points[0].second - 4.0404) <= 1e-4 && std::abs(points[1].second - 105.26) <= 5e-3;
  std::vector<double> grid;
  for (int k = 2; k <= 19; ++k) grid.push_back(0.05 * k);  // 0.1 ... 0.95
  const auto curve = amplification_curve(grid, eps);
  std::size_t violations = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].second > curve[i - 1].second)) ++violations;
  }
  ok = ok && violations == 0;
  return {ok, "a=0.5 -> " + std::to_string(points[0].second) + ", a=0.9 -> " + std::to_string(points[1].second) +
                  ", monotonicity violations " + std::to_string(violations)};
}

Outcome monotonicity(const std::vector<CorpusEntry>& corpus) {
  std::size_t violations = 0;
  for (const auto& [econ, acct] : corpus) {
    const IntensityVector f = direct_intensity(econ, acct);
    const CoefficientMatrix a = technical_coefficients(econ);
    const IntensityVector x = total_intensity(f, a);
    violations += static_cast<std::size_t>(((x.values - f.values).array() < 0.0).count());
    RowVector previous = RowVector::Zero(f.values.size());
    NeumannOptions opt;
    opt.on_partial_sum = [&](std::size_t, const RowVector& s) {
      violations += static_cast<std::size_t>(((s - previous).array() < 0.0).count());
      previous = s;
    };
    total_intensity_neumann(f, a, opt);
  }
  return {violations == 0, std::to_string(violations) + " violations"};
}

Outcome cli_contract() {
  const fs::path root = fs::temp_directory_path() / "eeio_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root);
  std::ostringstream out, err;
  std::size_t roundtrip_failures = 0;
  std::size_t attribute_failures = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const fs::path dir = root / ("gen" + std::to_string(seed));
    const int n = 1 + (seed * 9) % 60;
    if (cli::run_command({"generate", "--n", std::to_string(n), "--seed", std::to_string(seed), "--out",
                          dir.string()},
                         out, err) != 0) {
      ++roundtrip_failures;
      continue;
    }
    const Economy first = parse_table(dir / "table.csv");
    std::stringstream text;
    write_table(text, first);
    const Economy second = parse_table(text);
    if (!(first == second)) ++roundtrip_failures;
    if (cli::run_command({"attribute", (dir / "table.csv").string(), (dir / "emissions.csv").string()}, out,
                         err) != 0) {
      ++attribute_failures;
    }
  }
  std::ofstream(root / "corrupt.csv") << "MCHF,s1,s2,D,T\ns1,100,50,50,999\ns2,30,20,50,100\n";
  const int corrupt = cli::run_command({"validate", (root / "corrupt.csv").string()}, out, err);
  const int unknown = cli::run_command({"validate", (root / "corrupt.csv").string(), "--no-such-flag"}, out, err);
  fs::remove_all(root);
  return {roundtrip_failures == 0 && attribute_failures == 0 && corrupt == 1 && unknown == 2,
          "round-trip failures " + std::to_string(roundtrip_failures) + "/20, attribute failures " +
              std::to_string(attribute_failures) + "/20, corrupted exit " + std::to_string(corrupt) +
              ", unknown flag exit " + std::to_string(unknown)};
}

}  // namespace

int main() {
  const std::vector<CorpusEntry> corpus = build_corpus();
  std::cout << "corpus: " << corpus.size() << " economies, n from " << corpus.front().econ.size() << " to "
            << corpus.back().econ.size() << std::endl;

  report(1, "Conservation to final demand over the synthetic corpus", conservation(corpus));
  report(2, "Dual conservation to value added; literal A^T counterexample", dual_conservation(corpus));
  report(3, "Solve vs Neumann series oracle equivalence", oracle_equivalence(corpus));
  report(4, "Demand identity D = (I - A) T", proof_identity(corpus));
  report(5, "Worked 2-sector economy end to end", worked_example());
  report(6, "Scalar amplification curve near a = 1", instability());
  report(7, "Monotonicity of X over F and of Neumann partial sums", monotonicity(corpus));
  report(8, "CLI contract: round trip, attribute, exit codes", cli_contract());

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
