#include "cli/run.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli/suites.hpp"
#include "qcs/errors.hpp"

namespace qcs::cli {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;

const std::map<std::string, Command> kCommands = {
    {"special", Command::special},     {"ramanujan", Command::ramanujan},
    {"algebra", Command::algebra},     {"coherent", Command::coherent},
    {"completeness", Command::completeness}, {"evolve", Command::evolve},
    {"verify-all", Command::verify_all},
};

const char* describe(const std::string& name) {
  if (name == "special") return "q-Pochhammer, q-exponential and q-integer identities";
  if (name == "ramanujan") return "Ramanujan moment: quadrature against the closed form";
  if (name == "algebra") return "truncated ladder algebra residuals";
  if (name == "coherent") return "coherent-state coefficients, eigen property and norm series";
  if (name == "completeness") return "resolution of identity: radial table and Monte Carlo";
  if (name == "evolve") return "driven dynamics diagnostics";
  return "every suite above";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  double tol = 0.0;
  std::string format = "json";

  CLI::App app{"Numerical checks for self-similar shape-invariant coherent states", "qcs"};
  app.require_subcommand(1);
  app.add_option("--q", cfg.q, "deformation parameter in (0,1)");
  app.add_option("--a1", cfg.a1, "first potential parameter (> 0)");
  app.add_option("--c", cfg.c, "remainder scale (> 0)");
  app.add_option("--n-max", cfg.n_max, "largest index in tables");
  app.add_option("--trunc", cfg.trunc, "Fock truncation level N");
  auto* tol_opt = app.add_option("--tol", tol, "override every deterministic threshold");
  app.add_option("--seed", cfg.seed, "run seed");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples per element");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.output_path, "write results to PATH instead of stdout");

  std::string chosen;
  for (const auto& [name, command] : kCommands) {
    app.add_subcommand(name, describe(name))->fallthrough()->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "qcs: " << e.what() << "\n";
    return kInvalid;
  }

  cfg.command = kCommands.at(chosen);
  cfg.format = format == "csv" ? Format::csv : Format::json;
  if (tol_opt->count() > 0) cfg.tol = tol;

  std::vector<ResultRow> rows;
  try {
    cfg.validate();
    rows = run_suites(cfg);
  } catch (const InvalidParameter& e) {
    err << "qcs: invalid parameter: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidDomain& e) {
    err << "qcs: invalid parameter: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "qcs: numerical failure: " << e.what() << "\n";
    return kFail;
  }

  try {
    if (cfg.output_path.empty()) {
      emit(rows, cfg.format, out);
    } else {
      emit_to_file(rows, cfg.format, cfg.output_path);
    }
  } catch (const std::runtime_error& e) {
    err << "qcs: " << e.what() << "\n";
    return kInvalid;
  }

  const auto failed = std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return r.pass == false; });
  err << fmt::format("qcs {}: {} rows, {} failed\n", chosen, rows.size(), failed);
  return failed == 0 ? kPass : kFail;
}

}  // namespace qcs::cli
