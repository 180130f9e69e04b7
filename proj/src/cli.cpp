#include "bsl/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsl/body_io.hpp"
#include "bsl/bounds.hpp"
#include "bsl/errors.hpp"
#include "bsl/functionals.hpp"
#include "bsl/quadrature.hpp"
#include "bsl/util.hpp"
#include "bsl/verify.hpp"

namespace bsl {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string engine = "gauss";
  std::string region = "auto";
  int nodes = 0;  // 0 = per-command default
  long samples = 100000;
  std::uint64_t seed = 12345;
  std::string out_path;
  std::string body_path;
  std::vector<double> center;
  bool echo_body = false;
};

void add_quadrature_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--engine", c.engine, "quadrature engine")
      ->check(CLI::IsMember({"gauss", "mc"}));
  cmd->add_option("--nodes", c.nodes,
                  "gauss nodes per angular axis (0 = command default)");
  cmd->add_option("--samples", c.samples, "monte carlo sample count");
  cmd->add_option("--seed", c.seed, "monte carlo seed");
  cmd->add_option("--region", c.region, "angular integration domain")
      ->check(CLI::IsMember({"auto", "octant", "full"}));
}

void add_out_flag(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_path,
                  "write the output to FILE instead of stdout");
}

void add_body_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--body", c.body_path, "JSON body description file")
      ->required();
  cmd->add_option("--center", c.center,
                  "evaluation center (comma-separated coordinates)")
      ->delimiter(',');
  cmd->add_flag("--echo-body", c.echo_body,
                "embed the canonical body description in the report");
}

RuleConfig rule_config(const Common& c, int default_nodes) {
  RuleConfig cfg;
  cfg.engine = c.engine == "mc" ? RuleConfig::Eng::monte_carlo
                                : RuleConfig::Eng::gauss;
  if (c.region == "octant")
    cfg.region = RuleConfig::Reg::octant;
  else if (c.region == "full")
    cfg.region = RuleConfig::Reg::full;
  else
    cfg.region = RuleConfig::Reg::automatic;
  cfg.nodes_per_axis = c.nodes > 0 ? c.nodes : default_nodes;
  cfg.samples = c.samples;
  cfg.seed = c.seed;
  return cfg;
}

Json quadrature_parameters(const Common& c, const RuleConfig& cfg) {
  Json p;
  p["engine"] = c.engine;
  p["region"] = c.region;
  if (c.engine == "mc") {
    p["samples"] = cfg.samples;
    p["seed"] = cfg.seed;
  } else {
    p["nodes_per_axis"] = cfg.nodes_per_axis;
  }
  return p;
}

bool center_is_origin(const std::vector<double>& z) {
  for (double c : z)
    if (c != 0.0) return false;
  return true;
}

std::vector<double> parse_gamma_range(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw InputError("--gammas expects lo:hi:count[:lin], got '" + text + "'");
  double lo = 0.0, hi = 0.0;
  long count = 0;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    count = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw InputError("--gammas has a non-numeric field: '" + text + "'");
  }
  const bool linear = parts.size() == 4;
  if (linear && parts[3] != "lin")
    throw InputError("--gammas trailing flag must be 'lin', got '" + parts[3] +
                     "'");
  if (!(lo > 0.0) || !(hi > lo))
    throw InputError("--gammas needs 0 < lo < hi");
  if (count < 2) throw InputError("--gammas needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = double(i) / double(count - 1);
    g[std::size_t(i)] =
        linear ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t);
  }
  return g;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "bsl";
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  return s;
}

std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

const char* region_class_name(RegionClass c) {
  switch (c) {
    case RegionClass::bounded: return "bounded";
    case RegionClass::divergent: return "divergent";
    case RegionClass::ambiguous: return "ambiguous";
    default: return "unresolved";
  }
}

int deliver(const std::string& text, const std::string& out_path,
            std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputError("cannot open output file '" + out_path + "'");
    file << text;
  }
  return 0;
}

Json finish_report(Json&& report,
                   std::chrono::steady_clock::time_point start) {
  report["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return std::move(report);
}

std::string scan_csv(const std::vector<std::string>& args,
                     const ScanResult& res, bool resolved) {
  std::ostringstream csv;
  csv << "# " << join_args(args) << "\n";
  csv << "gamma,I_alpha,J_beta,product,log10_gamma,log10_product\n";
  for (const ScanRow& row : res.rows) {
    csv << format_full(row.gamma) << ',' << format_full(row.i_alpha) << ','
        << format_full(row.j_beta) << ',' << format_full(row.product) << ','
        << format_full(std::log10(row.gamma)) << ','
        << format_full(std::log10(row.product)) << "\n";
  }
  csv << "# fitted_slope " << format_full(res.fit.slope) << "\n";
  csv << "# predicted_slope " << format_full(res.predicted) << "\n";
  csv << "# verdict " << (resolved ? "resolved" : "unresolved") << "\n";
  return csv.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();

  CLI::App app{"convex-body integral laboratory"};
  app.name("bsl");
  app.require_subcommand(1);

  Common c;

  // integrate
  double alpha = 0.0;
  auto* cmd_integrate = app.add_subcommand(
      "integrate", "integrate a power of the radial function over the sphere");
  add_body_flags(cmd_integrate, c);
  cmd_integrate->add_option("--alpha", alpha, "radial exponent")->required();
  add_quadrature_flags(cmd_integrate, c);
  add_out_flag(cmd_integrate, c);

  // product
  double beta = 0.0;
  bool do_santalo = false;
  long max_iter = 2000;
  double diam_tol = 1e-8;
  auto* cmd_product = app.add_subcommand(
      "product", "two-factor radial/polar product at a center");
  add_body_flags(cmd_product, c);
  cmd_product->add_option("--alpha", alpha, "radial exponent")->required();
  cmd_product->add_option("--beta", beta, "polar exponent")->required();
  cmd_product->add_flag("--santalo", do_santalo,
                        "minimize the product over interior centers");
  cmd_product->add_option("--max-iter", max_iter,
                          "descent iteration budget (with --santalo)");
  cmd_product->add_option("--diam-tol", diam_tol,
                          "relative simplex-diameter stop (with --santalo)");
  add_quadrature_flags(cmd_product, c);
  add_out_flag(cmd_product, c);

  // dualquermass
  double q_order = 0.0;
  auto* cmd_quermass = app.add_subcommand(
      "dualquermass", "dual quermassintegral of a star body");
  add_body_flags(cmd_quermass, c);
  cmd_quermass->add_option("--q", q_order, "quermassintegral order")
      ->required();
  add_quadrature_flags(cmd_quermass, c);
  add_out_flag(cmd_quermass, c);

  // mvee
  double eps_target = 1e-6;
  auto* cmd_mvee = app.add_subcommand(
      "mvee", "minimum-volume enclosing ellipsoid of a polytope");
  cmd_mvee->add_option("--body", c.body_path, "JSON body description file")
      ->required();
  cmd_mvee->add_option("--eps", eps_target, "relative optimality gap target");
  cmd_mvee->add_flag("--echo-body", c.echo_body,
                     "embed the canonical body description in the report");
  add_out_flag(cmd_mvee, c);

  // s-integral
  std::vector<double> axes;
  auto* cmd_s = app.add_subcommand(
      "s-integral", "hyperplane-section normalization integral");
  cmd_s->add_option("--beta", beta, "integrand exponent")->required();
  cmd_s->add_option("--a", axes, "axis lengths (comma-separated)")
      ->required()
      ->delimiter(',');
  add_quadrature_flags(cmd_s, c);
  add_out_flag(cmd_s, c);

  // scan-gamma
  int n_dim = 0;
  std::string gammas_text;
  std::vector<double> family_exponents;
  std::string center_mode_text = "origin";
  auto* cmd_scan = app.add_subcommand(
      "scan-gamma", "product growth along a one-parameter body family");
  cmd_scan->add_option("--n", n_dim, "sphere dimension (bodies in R^{n+1})")
      ->required();
  cmd_scan->add_option("--alpha", alpha, "radial exponent")->required();
  cmd_scan->add_option("--beta", beta, "polar exponent")->required();
  cmd_scan->add_option("--gammas", gammas_text, "lo:hi:count[:lin]")
      ->required();
  cmd_scan->add_option("--family", family_exponents,
                       "per-axis gamma exponents (default 1,0,...,0)")
      ->delimiter(',');
  cmd_scan->add_option("--center-mode", center_mode_text,
                       "evaluation center per family member")
      ->check(CLI::IsMember({"origin", "santalo"}));
  add_quadrature_flags(cmd_scan, c);
  add_out_flag(cmd_scan, c);

  // region
  std::vector<double> alphas, betas;
  double gamma_max = 10000.0;
  auto* cmd_region = app.add_subcommand(
      "region", "classify exponent pairs as bounded or divergent");
  cmd_region->add_option("--n", n_dim, "sphere dimension")->required();
  cmd_region->add_option("--alphas", alphas, "alpha grid (comma-separated)")
      ->required()
      ->delimiter(',');
  cmd_region->add_option("--betas", betas, "beta grid (comma-separated)")
      ->required()
      ->delimiter(',');
  cmd_region->add_option("--gamma-max", gamma_max,
                         "largest axis ratio scanned");
  cmd_region->add_option("--center-mode", center_mode_text,
                         "evaluation center per scanned body")
      ->check(CLI::IsMember({"origin", "santalo"}));
  add_quadrature_flags(cmd_region, c);
  add_out_flag(cmd_region, c);

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify", "run the full internal invariant suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_verify) {
      const auto results = run_invariant_suite(&out);
      std::size_t failures = 0;
      std::string first;
      for (const auto& r : results)
        if (!r.pass) {
          ++failures;
          if (first.empty()) first = r.name;
        }
      out << "\n" << (results.size() - failures) << "/" << results.size()
          << " invariants hold\n";
      if (failures != 0) {
        err << "first failing invariant: " << first << "\n";
        return 1;
      }
      return 0;
    }

    if (*cmd_integrate || *cmd_product || *cmd_quermass) {
      const BodySpec body = load_body_file(c.body_path);
      const int n = body.dim - 1;
      const bool symmetric_setup =
          is_unconditional(body) && center_is_origin(c.center);
      const RuleConfig cfg = rule_config(c, 48);

      Json report;
      report["schema_version"] = "1.0";
      Json params = quadrature_parameters(c, cfg);
      params["body"] = c.body_path;
      params["center"] = c.center.empty()
                             ? std::vector<double>(std::size_t(body.dim), 0.0)
                             : c.center;
      Json results;

      if (*cmd_integrate) {
        report["command"] = "integrate";
        params["alpha"] = alpha;
        const SphereRule rule = make_rule(cfg, n, symmetric_setup);
        const IntegralEstimate est =
            radial_power_integral(centered(body, c.center), alpha, rule);
        results["value"] = est.value;
        results["error_indicator"] = est.error_indicator;
        results["node_count"] = rule.node_count();
      } else if (*cmd_quermass) {
        report["command"] = "dualquermass";
        params["q"] = q_order;
        const SphereRule rule = make_rule(cfg, n, symmetric_setup);
        results["value"] =
            dual_quermassintegral(centered(body, c.center), q_order, rule);
        results["order"] = q_order;
        results["node_count"] = rule.node_count();
      } else {
        report["command"] = "product";
        params["alpha"] = alpha;
        params["beta"] = beta;
        const ExponentPair pair{alpha, beta, n};
        if (do_santalo) {
          RuleConfig full_cfg = cfg;
          if (full_cfg.region == RuleConfig::Reg::automatic)
            full_cfg.region = RuleConfig::Reg::full;
          const SphereRule rule = make_rule(full_cfg, n, false);
          SantaloOptions opts;
          opts.max_iter = max_iter;
          opts.diam_tol = diam_tol;
          opts.z0 = c.center;
          const SantaloResult res =
              santalo_point(body, pair, rule, SantaloMode::product, opts);
          results["z"] = res.z;
          results["product_at_z"] = res.product_at_z;
          results["product_at_origin"] = res.product_at_origin;
          results["iterations"] = res.iterations;
          results["converged"] = res.converged;
          results["no_descent"] = res.no_descent;
          results["node_count"] = rule.node_count();
        } else {
          const SphereRule rule = make_rule(cfg, n, symmetric_setup);
          results["product"] = bs_product(body, c.center, pair, rule);
          results["i_alpha"] =
              radial_power_integral(centered(body, c.center), alpha, rule)
                  .value;
          results["j_beta"] =
              polar_radial_power_integral(body, c.center, beta, rule).value;
          results["node_count"] = rule.node_count();
        }
      }

      report["parameters"] = std::move(params);
      if (c.echo_body) report["body"] = Json::parse(body_to_json(body));
      report["results"] = std::move(results);
      return deliver(finish_report(std::move(report), start).dump(2) + "\n",
                     c.out_path, out);
    }

    if (*cmd_mvee) {
      const BodySpec body = load_body_file(c.body_path);
      const Loewner fit = loewner_ellipsoid(vertex_pairs(body), eps_target);
      Json report;
      report["schema_version"] = "1.0";
      report["command"] = "mvee";
      Json params;
      params["body"] = c.body_path;
      params["eps"] = eps_target;
      report["parameters"] = std::move(params);
      if (c.echo_body) report["body"] = Json::parse(body_to_json(body));
      Json results;
      std::vector<std::vector<double>> rows(std::size_t(fit.dim));
      for (int r = 0; r < fit.dim; ++r)
        rows[std::size_t(r)].assign(
            fit.A.begin() + std::ptrdiff_t(r) * fit.dim,
            fit.A.begin() + (std::ptrdiff_t(r) + 1) * fit.dim);
      results["matrix"] = rows;
      results["eps_achieved"] = fit.eps;
      results["iterations"] = fit.iterations;
      results["dim"] = fit.dim;
      report["results"] = std::move(results);
      return deliver(finish_report(std::move(report), start).dump(2) + "\n",
                     c.out_path, out);
    }

    if (*cmd_s) {
      const int n = int(axes.size()) - 1;
      const int default_nodes =
          n == 1 ? 4096 : (n == 2 ? 512 : (n == 3 ? 128 : 48));
      RuleConfig cfg = rule_config(c, default_nodes);
      if (cfg.region == RuleConfig::Reg::automatic)
        cfg.region = RuleConfig::Reg::octant;
      const SphereRule rule = make_rule(cfg, n, true);
      const IntegralEstimate est = s_integral(beta, axes, rule);
      Json report;
      report["schema_version"] = "1.0";
      report["command"] = "s-integral";
      Json params = quadrature_parameters(c, cfg);
      params["beta"] = beta;
      params["a"] = axes;
      report["parameters"] = std::move(params);
      Json results;
      results["value"] = est.value;
      results["error_indicator"] = est.error_indicator;
      results["node_count"] = rule.node_count();
      report["results"] = std::move(results);
      return deliver(finish_report(std::move(report), start).dump(2) + "\n",
                     c.out_path, out);
    }

    if (*cmd_scan) {
      const GammaFamily family =
          family_exponents.empty() ? GammaFamily::rhombus_axis(n_dim)
                                   : GammaFamily{family_exponents};
      const ExponentPair pair{alpha, beta, n_dim};
      const std::vector<double> gammas = parse_gamma_range(gammas_text);
      const RuleConfig cfg = rule_config(c, 0);
      const CenterMode mode = center_mode_text == "santalo"
                                  ? CenterMode::santalo
                                  : CenterMode::origin;
      try {
        const ScanResult res = gamma_scan(family, pair, gammas, cfg, mode);
        return deliver(scan_csv(args, res, true), c.out_path, out);
      } catch (const UnresolvedAsymptotics& e) {
        deliver(scan_csv(args, e.partial, false), c.out_path, out);
        err << "numerics error: " << e.what() << "\n";
        return 4;
      }
    }

    if (*cmd_region) {
      const RuleConfig cfg = rule_config(c, 0);
      const CenterMode mode = center_mode_text == "santalo"
                                  ? CenterMode::santalo
                                  : CenterMode::origin;
      const RegionTable table =
          region_scan(n_dim, alphas, betas, gamma_max, cfg, mode);
      std::ostringstream csv;
      csv << "# " << join_args(args) << "\n";
      csv << "alpha,beta,admissible,predicted_slope,fitted_slope,"
             "classification,agree,note\n";
      for (const RegionRow& row : table.rows) {
        csv << format_full(row.alpha) << ',' << format_full(row.beta) << ','
            << (row.admissible_pair ? "true" : "false") << ','
            << format_full(row.predicted_slope) << ','
            << format_full(row.fitted_slope) << ','
            << region_class_name(row.cls) << ','
            << (row.agree ? "true" : "false") << ',' << csv_safe(row.note)
            << "\n";
      }
      csv << "# agree " << table.agree_count << "/" << table.rows.size()
          << "\n";
      return deliver(csv.str(), c.out_path, out);
    }

    err << "internal error: unhandled subcommand\n";
    return 1;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    err << "geometry error: " << e.what() << "\n";
    return 3;
  } catch (const NumericsError& e) {
    err << "numerics error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bsl
