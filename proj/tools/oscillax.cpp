#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "oscillax/amplitude.hpp"
#include "oscillax/dyson.hpp"
#include "oscillax/errors.hpp"
#include "oscillax/experiments.hpp"
#include "oscillax/scenario.hpp"

namespace fs = std::filesystem;
using namespace oscillax;

namespace {

enum Exit { kOk = 0, kViolation = 1, kConfig = 2, kQuadrature = 3 };

struct Options {
  std::string scenario;
  std::string out;
  std::vector<std::string> sets;
  std::string checks;
  bool checks_given = false;
  bool force = false;
  std::string format = "table";
};

Scenario load(const Options& o) {
  Scenario s = load_scenario(o.scenario);
  for (const auto& kv : o.sets) apply_override(s, kv);
  if (o.checks_given) {
    s.checks.clear();
    std::stringstream ss(o.checks);
    std::string c;
    while (std::getline(ss, c, ',')) {
      if (c.empty()) continue;
      if (!known_checks().count(c)) throw ConfigError("unknown check '" + c + "'");
      s.checks.insert(c);
    }
  }
  validate(s);
  return s;
}

using Files = std::vector<std::pair<std::string, std::string>>;

void write_outputs(const Options& o, const Files& files) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + o.out + "': " + ec.message());
  if (!o.force)
    for (const auto& [name, body] : files)
      if (fs::exists(dir / name)) throw ConfigError((dir / name).string() + " exists (use --force to overwrite)");
  for (const auto& [name, body] : files) {
    fs::path tmp = dir / (name + ".tmp");
    {
      std::ofstream f(tmp, std::ios::binary);
      f << body;
      if (!f) throw ConfigError("cannot write " + tmp.string());
    }
    fs::rename(tmp, dir / name);
  }
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

int cmd_verify(const Options& o) {
  Scenario s = load(o);
  RunResult r = run_verify(s);
  write_outputs(o, {{"bounds.csv", bounds_csv(r.bounds)}});
  std::cout << join(r.summary);
  return r.violations ? kViolation : kOk;
}

int cmd_propagate(const Options& o) {
  Scenario s = load(o);
  RunResult r = run_propagate(s);
  Files files{{"spacetime.csv", spacetime_csv(r.spacetime)},
              {"slopes.csv", slopes_csv(r.slopes)},
              {"summary.txt", join(r.summary)}};
  if (r.residual_run) files.push_back({"residual.csv", residual_csv(r.residual)});
  write_outputs(o, files);
  std::cout << join(r.summary);
  return r.violations ? kViolation : kOk;
}

int cmd_constants(const Options& o) {
  Scenario s = load(o);
  BandFunction u0 = s.u0(), V = s.V();
  double p1 = u0.lo(), p2 = u0.hi(), a = V.lo(), b = V.hi();
  MConstants m = m_constants(a, b, s.delta2);
  CConstants c = c_constants(s.delta1, a, b, p1, p2, s.delta2);
  C3Constants c3 = c3_constants(a, b, p1, p2, s.effective_eps());
  std::vector<std::pair<std::string, double>> rows{
      {"erdelyi_c1", erdelyi_c1(s.delta1)},
      {"erdelyi_c2", erdelyi_c2(s.delta2)},
      {"cor_c1", cor_c1(s.delta1, p1, p2)},
      {"cor_c2", cor_c2(s.delta1, p1, p2)},
      {"cor_c3", cor_c3(s.delta2, p1, p2)},
      {"tildC1", tild_c1(s.delta1, p1, p2)},
      {"tildC2", tild_c2(s.delta1, p1, p2)},
      {"M1", m.M1},
      {"M2", m.M2},
      {"c1", c.c1},
      {"c2", c.c2},
      {"c3_tilde", c3.c3_tilde},
      {"c3", c3.c3},
  };
  std::ostringstream csv;
  csv << "name,value\n";
  for (const auto& [k, v] : rows) csv << k << ',' << fmt(v) << '\n';
  if (o.format == "csv") {
    std::cout << csv.str();
  } else {
    for (const auto& [k, v] : rows) std::printf("%-12s %.17g\n", k.c_str(), v);
  }
  if (!o.out.empty()) write_outputs(o, {{"constants.csv", csv.str()}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oscillax: band-limited Schrodinger propagation checks"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool need_out) {
    sub->add_option("--scenario", o.scenario, "scenario file")->required();
    auto out = sub->add_option("--out", o.out, "output directory");
    if (need_out) out->required();
    sub->add_option("--set", o.sets, "override, section.key=value or key=value");
    sub->add_option("--checks", o.checks, "comma-separated checks replacing the scenario list");
    sub->add_flag("--force", o.force, "overwrite existing output files");
  };
  auto* verify = app.add_subcommand("verify", "run bound checks, write bounds.csv");
  add_common(verify, true);
  auto* propagate = app.add_subcommand("propagate", "space-time sweep, slopes and residuals");
  add_common(propagate, true);
  auto* constants = app.add_subcommand("constants", "print the constant catalogue");
  add_common(constants, false);
  constants->add_option("--format", o.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  o.checks_given = app.get_subcommand_ptr("verify")->count("--checks") ||
                   app.get_subcommand_ptr("propagate")->count("--checks") ||
                   app.get_subcommand_ptr("constants")->count("--checks");
  try {
    if (verify->parsed()) return cmd_verify(o);
    if (propagate->parsed()) return cmd_propagate(o);
    return cmd_constants(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature failure: " << e.what() << '\n';
    return kQuadrature;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
