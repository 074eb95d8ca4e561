#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "specvaran/commands.hpp"

namespace {

using namespace specvaran;

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad --t-grid entry '" + item + "'");
    }
  }
  return out;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("SPECVARAN_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("SPECVARAN_SEED is not an unsigned integer: ") + env);
  }
}

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<int> n, trials, samples;
  std::optional<std::string> grid, scenario, json_out;
  double tol = kMembershipTol;
  double radius_ratio = 1.0;
  double group_tol = 1e-8;
  std::string fault;
  unsigned threads = 0;
  bool list = false;
  std::vector<std::string> ids;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "PRNG seed (falls back to SPECVARAN_SEED, then 0)");
  sub->add_option("--n", o.n, "largest random matrix dimension");
  sub->add_option("--trials", o.trials, "number of random instances");
  sub->add_option("--t-grid", o.grid, "comma-separated step sizes, e.g. 1e-1,1e-2,1e-3");
  sub->add_option("--tol", o.tol, "membership tolerance");
  sub->add_option("--samples", o.samples, "perturbation samples per step size");
  sub->add_option("--radius-ratio", o.radius_ratio, "perturbation radius divided by t");
  sub->add_option("--group-tol", o.group_tol, "relative eigenvalue clustering tolerance");
  sub->add_option("--scenario", o.scenario, "scenario JSON file");
  sub->add_option("--json", o.json_out, "write the JSON report here ('-' for stdout)");
  sub->add_option("--inject-fault", o.fault, "corrupt one computed quantity on purpose");
  sub->add_option("--threads", o.threads, "worker threads (0 = automatic)");
}

CliConfig to_config(const Options& o) {
  CliConfig c;
  c.seed = o.seed ? *o.seed : seed_from_env();
  if (o.n) c.n = *o.n;
  c.trials = o.trials;
  c.samples = o.samples;
  if (o.grid) c.t_grid = parse_grid(*o.grid);
  c.tol = o.tol;
  c.radius_ratio = o.radius_ratio;
  c.group_tol = o.group_tol;
  c.scenario = o.scenario;
  c.fault = o.fault;
  c.threads = o.threads;
  return c;
}

int emit(const Report& r, const Options& o) {
  const json body = r.to_json();
  if (o.json_out) {
    if (*o.json_out == "-") {
      std::cout << body.dump(2) << "\n";
    } else {
      std::ofstream out(*o.json_out);
      if (!out) throw InputError("cannot write '" + *o.json_out + "'");
      out << body.dump(2) << "\n";
    }
  }
  if (!o.json_out || *o.json_out != "-") {
    const bool all = r.records.size() <= 50;
    auto sorted = r.records;
    std::sort(sorted.begin(), sorted.end(), [](const Record& a, const Record& b) { return a.name < b.name; });
    for (const auto& rec : sorted) {
      if (!all && rec.status != "fail") continue;
      std::cout << (rec.status == "pass" ? "PASS " : rec.status == "fail" ? "FAIL " : "SKIP ")
                << rec.name << "  computed=" << rec.computed.dump()
                << "  expected=" << rec.expected.dump();
      if (!rec.note.empty()) std::cout << "  (" << rec.note << ")";
      std::cout << "\n";
    }
    std::cout << r.command << ": " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
              << r.count("skip") << " skip\n";
  }
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational analysis of spectral functions: numerical verification tool"};
  app.require_subcommand(1);
  Options o;
  auto* ve = app.add_subcommand("verify-expansions", "first- and second-order eigenvalue expansions");
  auto* vc = app.add_subcommand("verify-chain-rules", "subderivative and second-order tangent chain rules");
  auto* ss = app.add_subcommand("second-subderivative", "second subderivative for a scenario");
  auto* co = app.add_subcommand("check-optimality", "first- and second-order optimality for a scenario");
  auto* pe = app.add_subcommand("paper-examples", "worked examples as fixtures");
  for (auto* sub : {ve, vc, ss, co, pe}) add_common(sub, o);
  pe->add_flag("--list", o.list, "list fixture ids and exit");
  pe->add_option("ids", o.ids, "fixture ids to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (pe->parsed() && o.list) {
      for (const auto& f : fixtures()) std::cout << f.id << "  " << f.summary << "\n";
      return 0;
    }
    const CliConfig cfg = to_config(o);
    if (ve->parsed()) return emit(cmd_verify_expansions(cfg), o);
    if (vc->parsed()) return emit(cmd_verify_chain_rules(cfg), o);
    if (ss->parsed()) return emit(cmd_second_subderivative(cfg), o);
    if (co->parsed()) return emit(cmd_check_optimality(cfg), o);
    return emit(cmd_paper_examples(cfg, o.ids), o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
