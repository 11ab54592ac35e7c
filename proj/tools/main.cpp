// coxrep: verification front end for the Coxeter representation
// machinery.  Subcommands: verify, norm-sweep, fourier-mu,
// kernel-sweep, kappa-search, multiplier, enumerate, nset, report.
// Exit codes: 0 all checks pass, 1 a property failed, 2 bad
// configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coxrep/rng.hpp"
#include "verify_suites.hpp"

namespace {

using namespace coxrep;
using nlohmann::json;

Preset resolve_group(const std::string& preset_name, const std::string& group_file) {
  if (preset_name.empty() == group_file.empty())
    throw ParseError("exactly one of --preset or --group is required");
  if (!preset_name.empty()) return load_preset(preset_name);
  std::ifstream in(group_file);
  if (!in.good()) throw ParseError("cannot open group file: " + group_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Preset p = preset_from_json(buffer.str());
  if (p.name.empty()) p.name = group_file;
  return p;
}

std::vector<double> parse_r_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double r = std::stod(tok);
    if (!(r > 0.0 && r < 1.0)) throw ParseError("r values must lie in (0,1)");
    out.push_back(r);
  }
  if (out.empty()) throw ParseError("empty r list");
  return out;
}

std::vector<std::pair<int, double>> parse_schedule(const std::string& text) {
  std::vector<std::pair<int, double>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t colon = tok.find(':');
    if (colon == std::string::npos) throw ParseError("schedule entries look like N:r");
    out.emplace_back(std::stoi(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
  }
  if (out.empty()) throw ParseError("empty schedule");
  return out;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) throw ParseError("cannot write: " + out_path);
    out << doc.dump(2) << "\n";
  }
}

json load_report(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in.good()) throw ParseError("cannot open report: " + in_path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ParseError("report is not valid JSON");
  return doc;
}

int cmd_verify(const cli::VerifyConfig& config, const std::string& out_path) {
  std::vector<cli::SuiteResult> suites = cli::run_verify(config);
  bool pass = true;
  for (const cli::SuiteResult& s : suites) {
    std::printf("[%s] %-22s %6.2fs\n", s.pass ? "PASS" : "FAIL", s.name.c_str(), s.seconds);
    if (!s.pass) pass = false;
  }
  json report = cli::verify_report(config, suites);
  if (!out_path.empty()) emit(report, out_path);
  std::printf("%s: %s\n", config.preset.name.c_str(), pass ? "all suites passed" : "FAILURES");
  return pass ? 0 : 1;
}

void render_norm_rows(const json& rows) {
  std::vector<json> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end(), [](const json& a, const json& b) {
    return a["ratio"].get<double>() > b["ratio"].get<double>();
  });
  std::printf("%-14s %22s %12s %12s %8s %8s\n", "g", "z", "norm", "bound", "ratio", "kappa");
  for (const json& row : sorted) {
    char zbuf[48];
    std::snprintf(zbuf, sizeof zbuf, "%.4f%+.4fi", row["z"]["re"].get<double>(),
                  row["z"]["im"].get<double>());
    std::printf("%-14s %22s %12.6f %12.6f %8.4f %8.4f%s\n",
                row["g"].get<std::string>().empty() ? "e" : row["g"].get<std::string>().c_str(),
                zbuf, row["norm"].get<double>(), row["bound"].get<double>(),
                row["ratio"].get<double>(), row["kappa_used"].get<double>(),
                row["pass"].get<bool>() ? "" : "  VIOLATION");
  }
}

void render_kappa_estimates(const json& estimates) {
  std::printf("%-14s %8s %12s %14s %14s\n", "g", "r", "family", "kappa_grid", "kappa_lemma");
  for (const json& est : estimates) {
    std::string lemma = "-";
    std::string flag;
    if (est.contains("kappa_lemma")) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", est["kappa_lemma"].get<double>());
      lemma = buf;
      // The searched critical value sitting at or below the lemma
      // value means the lemma's kernel failed the PSD check.
      if (est["kappa_min_grid"].get<double>() <= est["kappa_lemma"].get<double>() ||
          !est.value("lemma_psd", true))
        flag = "  CONFLICT";
    }
    std::printf("%-14s %8.3f %12llu %14.6g %14s%s\n",
                est["g"].get<std::string>().empty() ? "e" : est["g"].get<std::string>().c_str(),
                est["r"].get<double>(),
                static_cast<unsigned long long>(est["family_size"].get<std::size_t>()),
                est["kappa_min_grid"].get<double>(), lemma.c_str(), flag.c_str());
  }
}

int cmd_report(const std::string& in_path) {
  json doc = load_report(in_path);
  std::printf("coxrep report (schema %d)\n", doc.value("schema", 0));
  if (doc.contains("config")) std::printf("config: %s\n", doc["config"].dump().c_str());
  bool printed = false;
  if (doc.contains("suites")) {
    printed = true;
    for (const json& s : doc["suites"]) {
      std::printf("[%s] %s\n", s["pass"].get<bool>() ? "PASS" : "FAIL",
                  s["name"].get<std::string>().c_str());
    }
  }
  if (doc.contains("rows")) {
    printed = true;
    render_norm_rows(doc["rows"]);
  }
  if (doc.contains("kappa_estimates")) {
    printed = true;
    render_kappa_estimates(doc["kappa_estimates"]);
  }
  if (doc.contains("estimates")) {
    printed = true;
    render_kappa_estimates(doc["estimates"]);
  }
  if (doc.contains("mu")) {
    printed = true;
    std::printf("mu certificate: %s\n", doc["mu"].dump().c_str());
  }
  if (doc.contains("mu_prime")) {
    printed = true;
    std::printf("mu' certificate: %s\n", doc["mu_prime"].dump().c_str());
  }
  if (!printed) std::printf("(empty report)\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification tool for Coxeter group representation bounds"};
  app.require_subcommand(1);

  std::string preset_name, group_file, out_path, in_path, element_text, schedule_text;
  std::string r_text = "0.5,0.8";
  int radius = 3, arg_steps = 16, trials = 200, gmax = -1, k_fold = 2, quad = 64;
  std::uint64_t seed = 42;
  std::size_t cap = Ball::kDefaultCap;
  double q = 0.5, kappa_override = 0.0;
  bool csv = false;

  auto add_group_flags = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset_name, "built-in group name");
    cmd->add_option("--group", group_file, "group configuration file (JSON)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the full property pipeline");
  add_group_flags(verify);
  verify->add_option("--radius", radius, "ball radius for the group suites");
  verify->add_option("--r", r_text, "comma separated r grid in (0,1)");
  verify->add_option("--arg-steps", arg_steps, "number of arguments on the circle");
  verify->add_option("--trials", trials, "random trials per sweep");
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--out", out_path, "write the JSON report here");

  CLI::App* sweep = app.add_subcommand("norm-sweep", "restricted norms against the bound");
  add_group_flags(sweep);
  sweep->add_option("--radius", radius, "domain ball radius (codomain is doubled)");
  sweep->add_option("--gmax", gmax, "max l(g), default = radius");
  sweep->add_option("--r", r_text, "comma separated r grid");
  sweep->add_option("--arg-steps", arg_steps, "arguments on the circle");
  sweep->add_option("--kappa", kappa_override, "override kappa instead of searching");
  sweep->add_option("--out", out_path, "write the JSON report here");

  CLI::App* fourier = app.add_subcommand("fourier-mu", "positivity certificates");
  fourier->add_option("--q", q, "base in (0,1)")->required();
  fourier->add_option("--k", k_fold, "fold count for the product lemma");
  fourier->add_option("--out", out_path, "write the JSON certificate here");

  CLI::App* kernels = app.add_subcommand("kernel-sweep", "random multiplier-bound sweeps");
  kernels->add_option("--trials", trials, "random trials");
  kernels->add_option("--seed", seed, "PRNG seed");
  kernels->add_option("--out", out_path, "write the JSON report here");

  CLI::App* kappa = app.add_subcommand("kappa-search", "critical kappa per group element");
  add_group_flags(kappa);
  kappa->add_option("--radius", radius, "family ball radius");
  kappa->add_option("--gmax", gmax, "max l(g), default = radius");
  kappa->add_option("--r", r_text, "comma separated r grid");
  kappa->add_option("--out", out_path, "write the JSON report here");

  CLI::App* mult = app.add_subcommand("multiplier", "Fejer approximate-identity schedule");
  add_group_flags(mult);
  mult->add_option("--radius", radius, "ball radius for the sup");
  mult->add_option("--schedule", schedule_text, "entries N:r, comma separated")->required();
  mult->add_flag("--csv", csv, "emit CSV instead of JSON");
  mult->add_option("--out", out_path, "write the output here");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list a Cayley ball");
  add_group_flags(enumerate);
  enumerate->add_option("--radius", radius, "ball radius");
  enumerate->add_option("--cap", cap, "element cap");
  enumerate->add_option("--out", out_path, "write the JSON listing here");

  CLI::App* nset = app.add_subcommand("nset", "reflection set record for one element");
  add_group_flags(nset);
  nset->add_option("--element", element_text, "element string, e.g. s0.s1.s0")->required();
  nset->add_option("--radius", radius, "family ball radius");
  nset->add_option("--out", out_path, "write the JSON record here");

  CLI::App* report = app.add_subcommand("report", "render a JSON report as text");
  report->add_option("--in", in_path, "report file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      cli::VerifyConfig config{resolve_group(preset_name, group_file), radius,
                               parse_r_list(r_text), arg_steps, trials, seed};
      return cmd_verify(config, out_path);
    }

    if (sweep->parsed()) {
      Preset preset = resolve_group(preset_name, group_file);
      NormSweepConfig config;
      config.g_max = gmax < 0 ? radius : gmax;
      config.r_values = parse_r_list(r_text);
      config.arg_steps = arg_steps;
      config.domain_radius = radius;
      config.codomain_radius = 2 * radius;
      if (kappa_override > 0.0) config.kappa_override = kappa_override;
      NormSweepResult result = verify_theorem_4_4(preset.matrix, config, preset.gamma);
      json doc = cli::norm_sweep_json(result);
      doc["schema"] = 1;
      doc["command"] = "norm-sweep";
      doc["config"] = {{"group", preset.name},   {"radius", radius},
                       {"gmax", config.g_max},   {"r", config.r_values},
                       {"arg_steps", arg_steps}};
      emit(doc, out_path);
      return result.pass ? 0 : 1;
    }

    if (fourier->parsed()) {
      MuCertificate mu = mu_search(q);
      MuPrimeCertificate mup = mu_prime_search(q, k_fold);
      json doc = cli::mu_certificate_json(mu);
      doc["schema"] = 1;
      doc["command"] = "fourier-mu";
      doc["mu_prime"] = cli::mu_prime_certificate_json(mup);
      emit(doc, out_path);
      return mu.found && mup.found ? 0 : 1;
    }

    if (kernels->parsed()) {
      cli::VerifyConfig config{load_preset("a1"), 1, {0.5}, 8, trials, seed};
      std::vector<cli::SuiteResult> suites = cli::run_verify(config);
      for (const cli::SuiteResult& s : suites) {
        if (s.name != "kernel-sweep" && s.name != "fourier-certificates") continue;
        std::printf("[%s] %-22s %6.2fs\n", s.pass ? "PASS" : "FAIL", s.name.c_str(), s.seconds);
        if (!out_path.empty()) {
          json doc = {{"schema", 1},
                      {"command", "kernel-sweep"},
                      {"seed", seed},
                      {"trials", trials},
                      {"details", s.details},
                      {"pass", s.pass}};
          if (s.name == "kernel-sweep") emit(doc, out_path);
        }
        if (s.name == "kernel-sweep" && !s.pass) return 1;
      }
      return 0;
    }

    if (kappa->parsed()) {
      Preset preset = resolve_group(preset_name, group_file);
      const CoxeterMatrix& m = preset.matrix;
      Ball family_ball = Ball::enumerate(m, radius);
      ReflectionTable table =
          ReflectionTable::enumerate(Ball::enumerate(m, 2 * radius - 1));
      std::optional<int> orbit_count;
      if (!preset.gamma.empty())
        orbit_count = orbit_partition(table, preset.gamma, m).count();
      int max_len = gmax < 0 ? radius : gmax;
      json estimates = json::array();
      bool all_found = true;
      for (double r : parse_r_list(r_text)) {
        for (const Element& g : family_ball.elements()) {
          if (g.length() > max_len) continue;
          KappaEstimate est = kappa_search(g, r, family_ball, table, m, orbit_count);
          estimates.push_back(cli::kappa_estimate_json(est));
          if (!est.found) all_found = false;
        }
      }
      json doc = {{"schema", 1},
                  {"command", "kappa-search"},
                  {"config", {{"group", preset.name}, {"radius", radius}, {"gmax", max_len}}},
                  {"estimates", estimates}};
      emit(doc, out_path);
      return all_found ? 0 : 1;
    }

    if (mult->parsed()) {
      Preset preset = resolve_group(preset_name, group_file);
      Ball ball = Ball::enumerate(preset.matrix, radius);
      auto entries = approximate_identity_demo(ball, parse_schedule(schedule_text));
      if (csv) {
        std::ostringstream text;
        text << "N,r,sup_dev\n";
        for (const DemoEntry& e : entries)
          text << e.order << "," << e.r << "," << json(e.sup_dev).dump() << "\n";
        if (out_path.empty()) {
          std::cout << text.str();
        } else {
          std::ofstream out(out_path, std::ios::binary);
          if (!out.good()) throw ParseError("cannot write: " + out_path);
          out << text.str();
        }
      } else {
        json rows = json::array();
        for (const DemoEntry& e : entries)
          rows.push_back({{"N", e.order},
                          {"r", e.r},
                          {"sup_dev", e.sup_dev},
                          {"argmax_length", e.argmax_len}});
        json doc = {{"schema", 1},
                    {"command", "multiplier"},
                    {"config", {{"group", preset.name}, {"radius", radius}}},
                    {"rows", rows}};
        emit(doc, out_path);
      }
      return 0;
    }

    if (enumerate->parsed()) {
      Preset preset = resolve_group(preset_name, group_file);
      Ball ball = Ball::enumerate(preset.matrix, radius, cap);
      json elements = json::array();
      for (const Element& g : ball.elements()) elements.push_back(to_string(g));
      json doc = {{"schema", 1},
                  {"command", "enumerate"},
                  {"config", {{"group", preset.name}, {"radius", radius}}},
                  {"size", ball.size()},
                  {"growth", ball.growth()},
                  {"elements", elements}};
      emit(doc, out_path);
      return 0;
    }

    if (nset->parsed()) {
      Preset preset = resolve_group(preset_name, group_file);
      const CoxeterMatrix& m = preset.matrix;
      Element g = parse_element(element_text, m);
      int table_radius = std::max(2 * g.length() - 1, 2 * radius - 1);
      ReflectionTable table = ReflectionTable::enumerate(Ball::enumerate(m, table_radius));
      Ball family_ball = Ball::enumerate(m, radius);
      NSet ns = n_set(g, table, m);
      OrbitPartition orbits = orbit_partition(table, preset.gamma, m);
      NgFamily family = n_g_family(g, family_ball, table, m);
      json nset_list = json::array();
      for (std::size_t idx : ns.ordered) nset_list.push_back(to_string(table.at(idx).element));
      json class_sizes = json::array();
      for (const auto& cls : orbits.classes) class_sizes.push_back(cls.size());
      json doc = {{"schema", 1},
                  {"command", "nset"},
                  {"element", to_string(g)},
                  {"length", g.length()},
                  {"nset", nset_list},
                  {"family_size", family.sets.size()},
                  {"orbit_class_sizes", class_sizes}};
      emit(doc, out_path);
      return 0;
    }

    if (report->parsed()) return cmd_report(in_path);
  } catch (const ParseError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
