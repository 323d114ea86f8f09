#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>

#include "roekms/io.hpp"

using nlohmann::json;
using namespace roekms;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw validation_error("cannot open output file: " + path);
      f << text;
      if (text.empty() || text.back() != '\n') f << '\n';
    }
  }
};

std::string config_echo(const CLI::App& cmd) {
  std::ostringstream os;
  os << cmd.get_name();
  for (const auto* opt : cmd.get_options()) {
    if (opt->count() == 0 || opt->get_name().empty()) continue;
    // The destination does not affect the computation; keeping it out of the
    // echo makes artifacts written to different paths byte-identical.
    if (opt->get_name() == "--out") continue;
    for (const auto& r : opt->results()) os << ' ' << opt->get_name() << '=' << r;
  }
  return os.str();
}

json artifact_header(const CLI::App& cmd, std::uint64_t seed) {
  return {{"tool", "roekms"}, {"version", kVersion}, {"config", config_echo(cmd)}, {"seed", seed}};
}

std::string csv_header(const CLI::App& cmd, std::uint64_t seed) {
  std::ostringstream os;
  os << "# tool=roekms " << kVersion << '\n';
  os << "# config=" << config_echo(cmd) << '\n';
  os << "# seed=" << seed << '\n';
  return os.str();
}

SpacePtr parse_space(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw validation_error("empty space spec");
  try {
    if (parts[0] == "interval" && parts.size() == 2) return make_interval(std::stoll(parts[1]));
    if (parts[0] == "squares" && parts.size() == 2) return make_squares(std::stoll(parts[1]));
    if (parts[0] == "tree" && parts.size() == 3)
      return make_tree(std::stoi(parts[1]), std::stoi(parts[2]));
  } catch (const std::exception&) {
    throw validation_error("malformed space spec: " + spec);
  }
  throw validation_error("space spec must be interval:N, squares:N or tree:n:depth, got: " + spec);
}

std::vector<double> beta_grid(double lo, double hi, int steps) {
  if (steps < 1) throw validation_error("--steps must be >= 1");
  if (steps == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return g;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ROE_KMS_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

std::vector<long long> parse_depths(const std::string& csv, std::vector<long long> fallback) {
  if (csv.empty()) return fallback;
  std::vector<long long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  if (out.empty()) throw validation_error("empty depth schedule");
  return out;
}

LevelRule family_rule(const std::string& family, int& n_out) {
  std::vector<std::string> parts;
  std::stringstream ss(family);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (!parts.empty() && parts[0] == "tree" && parts.size() == 2) {
    n_out = std::stoi(parts[1]);
    return tree_level_rule(n_out);
  }
  if (family == "squares") return squares_log_level_rule();
  if (family == "interval") return interval_geometric_level_rule();
  throw validation_error("family must be tree:n, squares or interval, got: " + family);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band operators, flows and equilibrium states on finite metric truncations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string space_spec, potential_name = "word-length", format = "json", out_path, depths_csv;
  std::string family;
  double beta = 1.0, beta_min = 0.0, beta_max = 2.0, tol = 1e-10;
  double radius = 2.0, density = 0.4;
  int steps = 1, n = 2, pairs = 100, translations = 100, threads = 0;
  std::uint64_t seed = 1;

  auto* c_space = app.add_subcommand("space", "Emit a built-in space");
  c_space->add_option("--space", space_spec, "interval:N | squares:N | tree:n:depth")->required();

  auto* c_zsweep = app.add_subcommand("zsweep", "Partition function over a beta grid");
  c_zsweep->add_option("--space", space_spec)->required();
  c_zsweep->add_option("--potential", potential_name);
  c_zsweep->add_option("--beta", beta);
  c_zsweep->add_option("--beta-min", beta_min);
  c_zsweep->add_option("--beta-max", beta_max);
  c_zsweep->add_option("--steps", steps);

  auto* c_critical = app.add_subcommand("critical", "Bracket the critical beta of a family");
  c_critical->add_option("--family", family, "tree:n | squares | interval")->required();
  c_critical->add_option("--beta-min", beta_min)->required();
  c_critical->add_option("--beta-max", beta_max)->required();
  c_critical->add_option("--steps", steps)->required();
  c_critical->add_option("--depths", depths_csv, "comma-separated probe depths");

  auto* c_audit = app.add_subcommand("kms-audit", "Check the Gibbs state against both verifiers");
  c_audit->add_option("--space", space_spec)->required();
  c_audit->add_option("--potential", potential_name);
  c_audit->add_option("--beta", beta)->required();
  c_audit->add_option("--pairs", pairs);
  c_audit->add_option("--translations", translations);
  c_audit->add_option("--seed", seed);
  c_audit->add_option("--tol", tol);

  auto* c_decomp = app.add_subcommand("decompose", "Band decomposition of a seeded operator");
  c_decomp->add_option("--space", space_spec)->required();
  c_decomp->add_option("--radius", radius);
  c_decomp->add_option("--density", density);
  c_decomp->add_option("--seed", seed);

  auto* c_tree = app.add_subcommand("tree-report", "Phase classification of the n-branching tree");
  c_tree->add_option("-n,--branching", n)->required();
  c_tree->add_option("--beta-min", beta_min)->required();
  c_tree->add_option("--beta-max", beta_max)->required();
  c_tree->add_option("--steps", steps)->required();
  c_tree->add_option("--depths", depths_csv);
  c_tree->add_option("--threads", threads);

  for (auto* c : {c_space, c_zsweep, c_critical, c_audit, c_decomp, c_tree}) {
    c->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--out", out_path);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  Output out{out_path};
  try {
    if (*c_space) {
      auto space = parse_space(space_spec);
      if (format == "json") {
        json j = artifact_header(*c_space, seed);
        j["space"] = io::space_to_json(*space);
        out.write(j.dump(2));
      } else {
        std::ostringstream os;
        os << csv_header(*c_space, seed) << "id,label\n";
        for (long long x = 0; x < space->size(); ++x)
          os << x << ',' << space->label(x) << '\n';
        out.write(os.str());
      }
    } else if (*c_zsweep) {
      auto space = parse_space(space_spec);
      Potential h = named_potential(space, potential_name);
      std::vector<double> grid =
          c_zsweep->count("--steps") ? beta_grid(beta_min, beta_max, steps)
                                     : std::vector<double>{beta};
      if (format == "json") {
        json j = artifact_header(*c_zsweep, seed);
        json rows = json::array();
        for (double b : grid) {
          double log_z = log_partition_function(h, b);
          json row = {{"beta", b}, {"log_Z", log_z}};
          row["Z"] = log_z > kExpLimit ? json("inf") : json(std::exp(log_z));
          rows.push_back(row);
        }
        j["rows"] = rows;
        out.write(j.dump(2));
      } else {
        std::ostringstream os;
        os << csv_header(*c_zsweep, seed) << "beta,Z,log_Z\n";
        for (double b : grid) {
          double log_z = log_partition_function(h, b);
          os << io::format_double(b) << ','
             << io::format_double(log_z > kExpLimit
                                      ? std::numeric_limits<double>::infinity()
                                      : std::exp(log_z))
             << ',' << io::format_double(log_z) << '\n';
        }
        out.write(os.str());
      }
    } else if (*c_critical) {
      int fam_n = 0;
      LevelRule rule = family_rule(family, fam_n);
      std::vector<long long> depths =
          parse_depths(depths_csv, {250, 500, 1000, 2000, 4000, 8000, 16000});
      CriticalBetaResult res = critical_beta(rule, beta_grid(beta_min, beta_max, steps), depths);
      if (format == "json") {
        json j = artifact_header(*c_critical, seed);
        j["critical"] = io::critical_result_to_json(res);
        out.write(j.dump(2));
      } else {
        std::ostringstream os;
        os << csv_header(*c_critical, seed) << "beta,verdict\n";
        for (const auto& cv : res.per_beta)
          os << io::format_double(cv.beta) << ',' << to_string(cv.verdict) << '\n';
        if (res.estimate)
          os << "# estimate," << io::format_double(*res.estimate) << '\n';
        out.write(os.str());
      }
    } else if (*c_audit) {
      auto space = parse_space(space_spec);
      Potential h = named_potential(space, potential_name);
      DiagonalState phi = gibbs_state(h, beta);
      KmsReport direct =
          kms_defect_direct(phi, h, beta, operator_pair_population(space, pairs, seed));
      KmsReport crit =
          kms_defect_criterion(phi, h, beta, translation_population(space, translations, seed + 1));
      double worst = std::max(direct.max_defect(), crit.max_defect());
      bool pass = worst <= tol;
      if (format == "json") {
        json j = artifact_header(*c_audit, seed);
        j["direct"] = io::kms_report_to_json(direct);
        j["criterion"] = io::kms_report_to_json(crit);
        j["max_defect"] = worst;
        j["tol"] = tol;
        j["pass"] = pass;
        out.write(j.dump(2));
      } else {
        std::ostringstream os;
        os << csv_header(*c_audit, seed) << "check,defect,samples\n";
        os << "direct," << io::format_double(direct.max_defect()) << ',' << direct.samples << '\n';
        os << "criterion," << io::format_double(crit.max_defect()) << ',' << crit.samples << '\n';
        os << "# pass," << (pass ? "true" : "false") << '\n';
        out.write(os.str());
      }
      return pass ? 0 : 1;
    } else if (*c_decomp) {
      auto space = parse_space(space_spec);
      Rng rng(seed);
      BandOperator a = random_band_operator(space, radius, density, rng);
      auto terms = band_decompose(a);
      bool exact = reassemble(space, terms).same_entries(a);
      if (format == "json") {
        json j = artifact_header(*c_decomp, seed);
        j["nnz"] = a.nnz();
        j["propagation"] = a.propagation();
        json jt = json::array();
        for (auto& [d, f] : terms) {
          json term;
          term["translation"] = io::translation_to_json(f);
          json diag = json::array();
          for (auto& [x, y] : f.pairs()) {
            Complex v = d[y];
            diag.push_back({{"point", y}, {"re", v.real()}, {"im", v.imag()}});
          }
          term["diagonal"] = diag;
          jt.push_back(term);
        }
        j["terms"] = jt;
        j["exact_reassembly"] = exact;
        out.write(j.dump(2));
      } else {
        std::ostringstream os;
        os << csv_header(*c_decomp, seed) << "term,size,displacement\n";
        for (std::size_t i = 0; i < terms.size(); ++i)
          os << i << ',' << terms[i].second.size() << ','
             << io::format_double(terms[i].second.displacement()) << '\n';
        os << "# exact_reassembly," << (exact ? "true" : "false") << '\n';
        out.write(os.str());
      }
    } else if (*c_tree) {
      std::vector<long long> depths = parse_depths(depths_csv, {10, 100, 1000, 10000, 20000});
      tree::PhaseReport rep =
          tree::phase_report(n, beta_grid(beta_min, beta_max, steps), depths,
                             resolve_threads(threads));
      if (format == "json") {
        json j = artifact_header(*c_tree, seed);
        j["report"] = io::phase_report_to_json(rep);
        out.write(j.dump(2));
      } else {
        std::ostringstream os;
        os << csv_header(*c_tree, seed);
        std::ostringstream body;
        io::write_phase_report_csv(body, rep);
        os << body.str();
        out.write(os.str());
      }
    }
  } catch (const overflow_error& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return 3;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
