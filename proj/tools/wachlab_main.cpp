// Command-line front end: analyze a single family, sweep a grid of them,
// replay the regression families against their printed expectations, or
// audit the irreducibility criterion against brute force.
//
// Exit codes: 0 = success and all consistency checks passed; 1 = usage or
// input-size errors; 2 = a mathematical consistency check failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <wachlab/family.hpp>
#include <wachlab/json_io.hpp>
#include <wachlab/sweep.hpp>

namespace {

using namespace wachlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconsistent = 2;

struct CliConfig {
  std::string command;
  long long p = 3;
  int f = 1;
  std::vector<long long> weights;
  std::vector<int> types;
  int family = 0;
  long long k_min = 1;
  long long k_max = 0;
  std::vector<long long> primes;  // fixtures command
  size_t sample = 0;
  unsigned long long seed = 0;
  size_t cap = 10000;
  int threads = 1;
  int trunc = 0;
  std::string out;  // empty = stdout
  std::string format;
};

// Writes to the requested sink; file contents and stdout bytes are
// identical for identical configurations.
void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
  file << text;
}

std::string report_text(const AnalysisReport& rep) {
  std::ostringstream os;
  auto flag = [](bool b) { return b ? "ok" : "FAIL"; };
  os << "spec: " << rep.spec.key() << "\n";
  os << "character_ell: " << rep.character_ell.to_string() << "\n";
  os << "character_s: " << rep.character_s.to_string() << "\n";
  os << "reduction: exps " << detail::joined(rep.reduction.exps) << " mod "
     << rep.reduction.modulus() << "\n";
  os << "orbit (slot " << rep.generator_slot
     << "): " << detail::joined(rep.orbit) << "\n";
  os << "determinant: " << rep.det.exp << " mod " << rep.det.modulus() << "\n";
  os << "irreducible: " << (rep.irreducible ? "yes" : "no") << "\n";
  os << "checks: det=" << flag(rep.det_ok) << " star=" << flag(rep.star_ok)
     << " admissible=" << flag(rep.admissible)
     << " oracle=" << flag(rep.oracle_agrees)
     << " qk=" << flag(rep.wach.qk)
     << " qk_restricted=" << flag(rep.wach.qk_after_restriction) << "\n";
  os << "wach: k=" << rep.wach.k << " truncation=" << rep.wach.truncation
     << " gamma=" << rep.wach.gamma << "\n";
  os << "valid: " << (rep.valid() ? "yes" : "no") << "\n";
  return os.str();
}

FamilySpec spec_from_cli(const CliConfig& cfg) {
  FamilySpec spec{cfg.p, cfg.f, cfg.weights, cfg.types, cfg.family, false};
  spec.validate();
  return spec;
}

int cmd_analyze(const CliConfig& cfg) {
  AnalysisReport rep = analyze(spec_from_cli(cfg), cfg.trunc);
  if (cfg.format == "json") {
    emit(cfg, report_to_json(rep).dump(2) + "\n");
  } else if (cfg.format == "csv") {
    emit(cfg, sweep_csv_header() + "\n" +
                  sweep_csv_row(SweepRow{rep.spec, rep, ""}) + "\n");
  } else {
    emit(cfg, report_text(rep));
  }
  return rep.valid() ? kExitOk : kExitInconsistent;
}

int cmd_sweep(const CliConfig& cfg) {
  SweepConfig sc;
  sc.p = cfg.p;
  sc.f = cfg.f;
  sc.k_min = cfg.k_min;
  sc.k_max = cfg.k_max;
  sc.family = cfg.family;
  sc.sample = cfg.sample;
  sc.seed = cfg.seed;
  sc.cap = cfg.cap;
  sc.threads = cfg.threads;
  sc.trunc_override = cfg.trunc;
  std::vector<SweepRow> rows = run_sweep(sc);

  bool all_ok = true;
  for (const SweepRow& row : rows) all_ok = all_ok && row.ok();

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "wachlab-sweep/1";
    j["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
      if (row.error.empty()) {
        j["rows"].push_back(report_to_json(row.report));
      } else {
        nlohmann::ordered_json e;
        e["spec"] = spec_to_json(row.spec);
        e["error"] = row.error;
        j["rows"].push_back(e);
      }
    }
    j["all_valid"] = all_ok;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::string out = sweep_csv_header() + "\n";
    for (const SweepRow& row : rows) out += sweep_csv_row(row) + "\n";
    emit(cfg, out);
  }
  return all_ok ? kExitOk : kExitInconsistent;
}

int cmd_fixtures(const CliConfig& cfg) {
  std::ostringstream os;
  bool all_ok = true;
  for (int family : {25, 28}) {
    for (long long p : cfg.primes) {
      int passed = 0, total = 0;
      std::string first_failure;
      for (long long k0 = cfg.k_min; k0 <= cfg.k_max; ++k0)
        for (long long k1 = cfg.k_min; k1 <= cfg.k_max; ++k1) {
          FamilySpec spec = family == 25 ? fixture_25(p, k0, k1)
                                         : fixture_28(p, k0, k1);
          std::string detail;
          ++total;
          if (run_fixture_regression(spec, cfg.trunc, &detail)) {
            ++passed;
          } else if (first_failure.empty()) {
            first_failure = spec.key() + ": " + detail;
          }
        }
      all_ok = all_ok && passed == total;
      os << "family " << family << " p=" << p << ": " << passed << "/"
         << total << (passed == total ? " PASS" : " FAIL") << "\n";
      if (!first_failure.empty()) os << "  first failure: " << first_failure
                                     << "\n";
    }
  }
  emit(cfg, os.str());
  return all_ok ? kExitOk : kExitInconsistent;
}

int cmd_oracle_audit(const CliConfig& cfg) {
  long long modulus =
      modarith::checked_pow(cfg.p, 2 * cfg.f, (1LL << 62), "audit modulus") - 1;
  if (modulus > static_cast<long long>(cfg.cap))
    throw Error(ErrorKind::TooLarge,
                "audit enumerates all " + std::to_string(modulus) +
                    " residues with a brute-force check each; this exceeds "
                    "the cap of " + std::to_string(cfg.cap) +
                    ". Rerun with a larger --cap if you accept the runtime, "
                    "or audit a smaller p/f.");
  std::vector<long long> mismatches;
  for (long long e = 0; e < modulus; ++e)
    if (is_irreducible_closed_form(e, cfg.p, cfg.f) !=
        irreducibility_oracle(e, cfg.p, cfg.f))
      mismatches.push_back(e);

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "wachlab-oracle-audit/1";
    j["p"] = cfg.p;
    j["f"] = cfg.f;
    j["modulus"] = modulus;
    j["residues_checked"] = modulus;
    j["mismatches"] = mismatches;
    j["agree"] = mismatches.empty();
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    if (mismatches.empty()) {
      os << "closed form agrees with brute force on all " << modulus
         << " residues mod " << modulus << " (p=" << cfg.p << ", f=" << cfg.f
         << ")\n";
    } else {
      os << mismatches.size() << " mismatches mod " << modulus << ":";
      for (long long e : mismatches) os << " " << e;
      os << "\n";
    }
    emit(cfg, os.str());
  }
  return mismatches.empty() ? kExitOk : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;

  CLI::App app{
      "wachlab: reductions of two-dimensional crystalline representations "
      "over unramified base fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int env_trunc = 0;
  if (const char* env = std::getenv("WACHLAB_TRUNC")) env_trunc = std::atoi(env);

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "analyze one family member and print its report");
  analyze_cmd->add_option("-p,--prime", cfg.p, "prime p")->required();
  analyze_cmd->add_option("-f,--degree", cfg.f, "residue degree f")->required();
  analyze_cmd
      ->add_option("-k,--weights", cfg.weights,
                   "comma-separated labeled weights, one per embedding")
      ->required()
      ->delimiter(',');
  analyze_cmd
      ->add_option("--types", cfg.types,
                   "comma-separated shape vector in {1,2,3,4}^f")
      ->delimiter(',');
  analyze_cmd->add_option("--family", cfg.family,
                          "regression family label (25 or 28)");
  analyze_cmd->add_option("--trunc", cfg.trunc,
                          "series truncation override (default from weight, "
                          "or WACHLAB_TRUNC)");
  analyze_cmd->add_option("--format", cfg.format,
                          "json (default), text, or csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  analyze_cmd->add_option("-o,--out", cfg.out, "output file (default stdout)");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "analyze a grid of family members");
  sweep_cmd->add_option("-p,--prime", cfg.p, "prime p")->required();
  sweep_cmd->add_option("-f,--degree", cfg.f, "residue degree f")->required();
  sweep_cmd->add_option("--kmin", cfg.k_min, "smallest weight (default 1)");
  sweep_cmd->add_option("--kmax", cfg.k_max, "largest weight")->required();
  sweep_cmd->add_option("--family", cfg.family,
                        "sweep one regression family instead of shapes");
  sweep_cmd->add_option("--sample", cfg.sample,
                        "sample this many shape vectors instead of all");
  sweep_cmd->add_option("--seed", cfg.seed, "sampling seed (default 0)");
  sweep_cmd->add_option("--cap", cfg.cap, "row-count cap (default 10000)");
  sweep_cmd->add_option("--threads", cfg.threads,
                        "worker threads (default 1)");
  sweep_cmd->add_option("--trunc", cfg.trunc, "series truncation override");
  sweep_cmd->add_option("--format", cfg.format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("-o,--out", cfg.out, "output file (default stdout)");

  CLI::App* fixtures_cmd = app.add_subcommand(
      "fixtures", "replay the regression families against their printed "
                  "expectations");
  fixtures_cmd->add_option("-p,--primes", cfg.primes,
                           "primes to run (default 3,5)")
      ->delimiter(',');
  fixtures_cmd->add_option("--kmax", cfg.k_max,
                           "weights run over [1,kmax]^2 (default 6)");
  fixtures_cmd->add_option("--trunc", cfg.trunc, "series truncation override");
  fixtures_cmd->add_option("-o,--out", cfg.out,
                           "output file (default stdout)");

  CLI::App* audit_cmd = app.add_subcommand(
      "oracle-audit", "compare the irreducibility criterion against brute "
                      "force on every residue");
  audit_cmd->add_option("-p,--prime", cfg.p, "prime p")->required();
  audit_cmd->add_option("-f,--degree", cfg.f, "residue degree f")->required();
  audit_cmd->add_option("--cap", cfg.cap,
                        "largest admitted modulus p^{2f}-1 (default 10000)");
  audit_cmd->add_option("--format", cfg.format, "text (default) or json")
      ->check(CLI::IsMember({"text", "json"}));
  audit_cmd->add_option("-o,--out", cfg.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's exit-code zoo: anything other than a clean --help
    // exit is a usage error.
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (cfg.trunc == 0 && env_trunc > 0) cfg.trunc = env_trunc;

  try {
    if (analyze_cmd->parsed()) {
      cfg.command = "analyze";
      if (cfg.format.empty()) cfg.format = "json";
      return cmd_analyze(cfg);
    }
    if (sweep_cmd->parsed()) {
      cfg.command = "sweep";
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_sweep(cfg);
    }
    if (fixtures_cmd->parsed()) {
      cfg.command = "fixtures";
      if (cfg.primes.empty()) cfg.primes = {3, 5};
      if (cfg.k_max == 0) cfg.k_max = 6;
      cfg.k_min = 1;
      return cmd_fixtures(cfg);
    }
    cfg.command = "oracle-audit";
    if (cfg.format.empty()) cfg.format = "text";
    return cmd_oracle_audit(cfg);
  } catch (const Error& e) {
    std::cerr << "wachlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "wachlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "wachlab: " << e.what() << "\n";
    return kExitUsage;
  }
}
