// Command-line front end: evaluate functions from the zoo, build the
// square hierarchy, search for witness families refuting the generalized
// absolute-continuity classes, and dump scan data for plotting.
//
// Exit codes: 0 success (a refutation counts as success), 2 inconclusive,
// 1 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "aclab/dsl.hpp"
#include "aclab/error.hpp"
#include "aclab/report_json.hpp"
#include "aclab/witness.hpp"

namespace {

using namespace aclab;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error("cannot open output file '" + path + "'");
  return file;
}

// Override the Takagi truncation order everywhere it appears in a spec.
FunctionSpec with_takagi_k(const FunctionSpec& f, int k) {
  if (const auto* tt = f.as<TakagiTentFn>()) return FunctionSpec::takagi_tent(tt->d, k);
  if (const auto* pr = f.as<ProductFn>()) {
    Profile h = pr->h.kind() == Profile::Kind::Takagi ? Profile::takagi_profile(k) : pr->h;
    Profile g = pr->g.kind() == Profile::Kind::Takagi ? Profile::takagi_profile(k) : pr->g;
    return FunctionSpec::product(std::move(h), std::move(g), pr->d);
  }
  if (const auto* sm = f.as<SumFn>()) {
    std::vector<FunctionSpec> terms;
    for (const auto& t : sm->terms) terms.push_back(with_takagi_k(t, k));
    return FunctionSpec::sum(std::move(terms));
  }
  if (const auto* sc = f.as<ScaleFn>()) return FunctionSpec::scale(sc->c, with_takagi_k(*sc->inner, k));
  return f;
}

struct GlobalOpts {
  int threads = 1;
  bool dump_config = false;
};

Json config_echo(const std::string& command, const Json& fields, const GlobalOpts& g) {
  Json j;
  j["command"] = command;
  j["threads"] = g.threads;
  j["options"] = fields;
  return j;
}

int run_eval(const std::string& spec_text, const std::vector<std::string>& points,
             const std::string& points_file, int takagi_k, const std::string& out_path,
             const GlobalOpts& g) {
  FunctionSpec f = parse_function(spec_text);
  if (takagi_k > 0) f = with_takagi_k(f, takagi_k);
  std::vector<std::string> all = points;
  if (!points_file.empty()) {
    std::ifstream in(points_file);
    if (!in) throw Error("cannot open points file '" + points_file + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) all.push_back(line);
    }
  }
  if (all.empty()) throw Error("no points given (use --point or --points)");
  if (g.dump_config) {
    Json fields{{"spec", spec_text}, {"points", all}, {"takagi_k", takagi_k}};
    std::cout << dump_json(config_echo("eval", fields, g)) << "\n";
    return kExitOk;
  }
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  os << "value\terror_bound\texact\n";
  for (const std::string& ptext : all) {
    Q2Point p = parse_q2_point(ptext);
    try {
      Value v = f.eval(p);
      os << format_double(v.approx) << "\t" << format_double(v.err) << "\t"
         << (v.is_exact() ? v.exact->str() : std::string("-")) << "\n";
    } catch (const PoleError& e) {
      os << "pole\tinf\t-\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counterexample lab for interval-based absolute continuity classes"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker thread bound")
      ->envname("ACLAB_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dump-config", g.dump_config, "echo the resolved run configuration and exit");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a function at points");
  std::string eval_spec, eval_points_file, eval_out;
  std::vector<std::string> eval_points;
  int eval_takagi_k = 0;
  eval_cmd->add_option("spec", eval_spec, "function DSL")->required();
  eval_cmd->add_option("--point", eval_points, "point 'x,y' (repeatable; r2 terms allowed)");
  eval_cmd->add_option("--points", eval_points_file, "file with one point per line");
  eval_cmd->add_option("--takagi-k", eval_takagi_k, "override Takagi truncation order");
  eval_cmd->add_option("--out", eval_out, "write rows to a file instead of stdout");

  // ---- refute ----
  auto* ref_cmd = app.add_subcommand("refute", "search for a violating family");
  std::string ref_spec, ref_class = "1ac", ref_method = "auto", ref_pair, ref_out;
  std::string ref_delta = "1/100", ref_eps = "1", ref_ratio, ref_tau;
  int ref_n = 2, ref_m0 = 2, ref_max_level = 0, ref_depth = 0, ref_grid_r = 3, ref_max_k = 2;
  long ref_k = 1000;
  int ref_candidates = 4096, ref_iters = 2000;
  std::uint64_t ref_seed = 1;
  ref_cmd->add_option("spec", ref_spec, "function DSL")->required();
  ref_cmd->add_option("--class", ref_class, "AC class (1ac, alpha:A, 0ac, strong0ac, ...)");
  ref_cmd->add_option("--n", ref_n, "exponent n");
  ref_cmd->add_option("--delta", ref_delta, "measure budget (exact rational)");
  ref_cmd->add_option("--epsilon", ref_eps, "oscillation target (exact rational)");
  ref_cmd->add_option("--method", ref_method,
                      "auto | analytic:strong0ac | analytic:0ac | analytic:product | "
                      "analytic:half-ac | greedy | oracle");
  ref_cmd->add_option("--pair", ref_pair, "witness pair 'x,y:u,v'");
  ref_cmd->add_option("--ratio", ref_ratio, "steepness ratio m for analytic:0ac");
  ref_cmd->add_option("--k", ref_k, "square count for analytic:product");
  ref_cmd->add_option("--tau", ref_tau, "square side for analytic:product (default d/k)");
  ref_cmd->add_option("--m0", ref_m0, "first hierarchy level for analytic:half-ac");
  ref_cmd->add_option("--max-level", ref_max_level, "last hierarchy level (default depth)");
  ref_cmd->add_option("--depth", ref_depth, "hierarchy depth to build (default max-level)");
  ref_cmd->add_option("--grid-r", ref_grid_r, "oracle grid resolution");
  ref_cmd->add_option("--max-k", ref_max_k, "oracle max family size");
  ref_cmd->add_option("--candidates", ref_candidates, "greedy random candidate count");
  ref_cmd->add_option("--iters", ref_iters, "greedy local-search iterations");
  ref_cmd->add_option("--seed", ref_seed, "rng seed");
  ref_cmd->add_option("--out", ref_out, "write the JSON report to a file");
  std::string ref_growth_ks, ref_growth_tsv;
  ref_cmd->add_option("--growth-ks", ref_growth_ks,
                      "comma list of k values for the product growth curve");
  ref_cmd->add_option("--growth-tsv", ref_growth_tsv,
                      "write the (k, S_osc) growth curve of analytic:product");

  // ---- hierarchy ----
  auto* hier_cmd = app.add_subcommand("hierarchy", "build the recursive square construction");
  int hier_depth = 3;
  long long hier_cap = 10'000'000;
  bool hier_stats = false;
  std::string hier_stats_tsv, hier_squares, hier_witness, hier_witness_out;
  hier_cmd->add_option("--depth", hier_depth, "levels to build")->required();
  hier_cmd->add_option("--square-cap", hier_cap, "max total squares");
  hier_cmd->add_flag("--stats", hier_stats, "print per-level stats TSV to stdout");
  hier_cmd->add_option("--stats-tsv", hier_stats_tsv, "write per-level stats TSV");
  hier_cmd->add_option("--squares", hier_squares, "write squares as JSON lines");
  hier_cmd->add_option("--witness", hier_witness,
                       "emit the T_mk family report for levels 'm0:M'");
  hier_cmd->add_option("--witness-out", hier_witness_out, "file for the witness report");

  // ---- scan ----
  auto* scan_cmd = app.add_subcommand("scan", "numeric diagnostics as TSV");
  std::string scan_spec, scan_kind, scan_point, scan_dir = "1,1", scan_rect, scan_out;
  std::string scan_radii, scan_steps;
  int scan_levels = 8, scan_samples = 64;
  std::uint64_t scan_seed = 1;
  double scan_tol = 1e-6;
  scan_cmd->add_option("spec", scan_spec, "function DSL")->required();
  scan_cmd->add_option("--kind", scan_kind, "lip | dirderiv | energy")->required();
  scan_cmd->add_option("--point", scan_point, "base point for lip/dirderiv");
  scan_cmd->add_option("--dir", scan_dir, "direction for dirderiv (rational, unnormalized)");
  scan_cmd->add_option("--rect", scan_rect, "rectangle 'x,y:u,v' for energy");
  scan_cmd->add_option("--levels", scan_levels, "refinement levels for energy");
  scan_cmd->add_option("--radii", scan_radii, "comma list of radii for lip");
  scan_cmd->add_option("--steps", scan_steps, "comma list of steps for dirderiv");
  scan_cmd->add_option("--samples", scan_samples, "samples per radius for lip");
  scan_cmd->add_option("--seed", scan_seed, "rng seed");
  scan_cmd->add_option("--tol", scan_tol, "relative convergence tolerance");
  scan_cmd->add_option("--out", scan_out, "write TSV to a file");

  // ---- oracle ----
  auto* orc_cmd = app.add_subcommand("oracle", "exhaustive grid optimum");
  std::string orc_spec, orc_class = "1ac", orc_delta = "1/10", orc_eps = "1", orc_out;
  int orc_n = 2, orc_grid_r = 2, orc_max_k = 1;
  long long orc_cap = 100'000'000;
  orc_cmd->add_option("spec", orc_spec, "function DSL")->required();
  orc_cmd->add_option("--class", orc_class, "AC class");
  orc_cmd->add_option("--n", orc_n, "exponent n");
  orc_cmd->add_option("--delta", orc_delta, "measure budget");
  orc_cmd->add_option("--epsilon", orc_eps, "oscillation target");
  orc_cmd->add_option("--grid-r", orc_grid_r, "grid resolution")->required();
  orc_cmd->add_option("--max-k", orc_max_k, "max family size")->required();
  orc_cmd->add_option("--cap", orc_cap, "family enumeration cap");
  orc_cmd->add_option("--out", orc_out, "write the JSON report to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed())
      return run_eval(eval_spec, eval_points, eval_points_file, eval_takagi_k, eval_out, g);

    if (ref_cmd->parsed()) {
      if (g.dump_config) {
        Json fields{{"spec", ref_spec},     {"class", ref_class},   {"n", ref_n},
                    {"delta", ref_delta},   {"epsilon", ref_eps},   {"method", ref_method},
                    {"pair", ref_pair},     {"ratio", ref_ratio},   {"k", ref_k},
                    {"tau", ref_tau},       {"m0", ref_m0},         {"max_level", ref_max_level},
                    {"depth", ref_depth},   {"grid_r", ref_grid_r}, {"max_k", ref_max_k},
                    {"candidates", ref_candidates}, {"iters", ref_iters}, {"seed", ref_seed}};
        std::cout << dump_json(config_echo("refute", fields, g)) << "\n";
        return kExitOk;
      }
      ACClassSpec cls = parse_class(ref_class, ref_n);
      Rat delta = Rat::parse(ref_delta);
      Rat eps = Rat::parse(ref_eps);

      std::string method = ref_method;
      FunctionSpec f = parse_function(ref_spec);
      if (method == "auto") {
        if (cls.kind == ACKind::StrongZeroAC && !ref_pair.empty())
          method = "analytic:strong0ac";
        else if (cls.kind == ACKind::ZeroAC && !ref_pair.empty())
          method = "analytic:0ac";
        else if (cls.kind == ACKind::OneAC && (f.as<ProductFn>() || f.as<TakagiTentFn>()))
          method = "analytic:product";
        else if (cls.kind == ACKind::AlphaAC && f.as<HierarchyFn>())
          method = "analytic:half-ac";
        else
          method = "greedy";
      }

      WitnessReport rep;
      if (method == "analytic:strong0ac") {
        if (ref_pair.empty()) throw Error("analytic:strong0ac needs --pair");
        auto [a, b] = parse_point_pair(ref_pair);
        rep = refute_strong0ac(f, a, b, delta);
      } else if (method == "analytic:0ac") {
        if (ref_pair.empty() || ref_ratio.empty())
          throw Error("analytic:0ac needs --pair and --ratio");
        auto [x, y] = parse_point_pair(ref_pair);
        rep = refute_0ac(f, x, y, Rat::parse(ref_ratio), delta);
      } else if (method == "analytic:product") {
        std::optional<Rat> tau;
        if (!ref_tau.empty()) tau = Rat::parse(ref_tau);
        rep = refute_product_1ac(f, delta, ref_k, tau, eps);
        if (!ref_growth_tsv.empty()) {
          std::vector<long> ks;
          if (ref_growth_ks.empty()) {
            ks = {ref_k / 4, ref_k / 2, ref_k, 2 * ref_k};
          } else {
            std::size_t start = 0;
            while (start <= ref_growth_ks.size()) {
              std::size_t comma = ref_growth_ks.find(',', start);
              ks.push_back(std::stol(ref_growth_ks.substr(
                  start, comma == std::string::npos ? std::string::npos : comma - start)));
              if (comma == std::string::npos) break;
              start = comma + 1;
            }
          }
          std::ofstream gout(ref_growth_tsv);
          if (!gout) throw Error("cannot open '" + ref_growth_tsv + "'");
          gout << "k\tsum_osc\tsum_measure\n";
          for (long kk : ks) {
            if (kk < 2) continue;
            WitnessReport r = refute_product_1ac(f, delta, kk, std::nullopt, eps);
            gout << kk << "\t" << format_double(r.s_osc.approx) << "\t" << r.s_meas.str() << "\n";
          }
        }
      } else if (method == "analytic:half-ac") {
        const auto* hf = f.as<HierarchyFn>();
        int max_level = ref_max_level > 0 ? ref_max_level : (hf ? hf->depth : ref_depth);
        if (max_level < ref_m0) throw Error("analytic:half-ac needs --max-level >= --m0");
        std::shared_ptr<const Hierarchy> h;
        if (hf) {
          h = hf->hierarchy;
        } else {
          int build_depth = ref_depth > 0 ? ref_depth : max_level;
          h = std::make_shared<const Hierarchy>(Hierarchy::build(build_depth));
        }
        rep = refute_half_ac(*h, ref_m0, max_level, g.threads);
      } else if (method == "greedy") {
        GreedyBudget budget;
        budget.candidates = ref_candidates;
        budget.iters = ref_iters;
        budget.seed = ref_seed;
        rep = greedy_search(f, cls, delta, budget, std::nullopt, eps);
      } else if (method == "oracle") {
        rep = oracle_max(f, ref_grid_r, ref_max_k, delta, cls, {}, eps);
      } else {
        throw Error("unknown method '" + method + "'");
      }
      std::ofstream file;
      std::ostream& os = open_out(file, ref_out);
      os << dump_json(to_json(rep)) << "\n";
      return rep.violates() ? kExitOk : kExitInconclusive;
    }

    if (hier_cmd->parsed()) {
      if (g.dump_config) {
        Json fields{{"depth", hier_depth},       {"square_cap", hier_cap},
                    {"stats", hier_stats},       {"stats_tsv", hier_stats_tsv},
                    {"squares", hier_squares},   {"witness", hier_witness},
                    {"witness_out", hier_witness_out}};
        std::cout << dump_json(config_echo("hierarchy", fields, g)) << "\n";
        return kExitOk;
      }
      BuildLimits lim;
      lim.square_cap = hier_cap;
      Point lo(Rat(0), Rat(0)), hi(Rat(1), Rat(1));
      Hierarchy h = Hierarchy::build(hier_depth, Interval(lo, hi), lim);
      if (hier_stats) write_level_stats_tsv(h, std::cout);
      if (!hier_stats_tsv.empty()) {
        std::ofstream f2(hier_stats_tsv);
        if (!f2) throw Error("cannot open '" + hier_stats_tsv + "'");
        write_level_stats_tsv(h, f2);
      }
      if (!hier_squares.empty()) {
        std::ofstream f2(hier_squares);
        if (!f2) throw Error("cannot open '" + hier_squares + "'");
        write_squares_jsonl(h, f2);
      }
      if (!hier_witness.empty()) {
        std::size_t colon = hier_witness.find(':');
        if (colon == std::string::npos) throw Error("--witness needs 'm0:M'");
        int m0 = std::stoi(hier_witness.substr(0, colon));
        int M = std::stoi(hier_witness.substr(colon + 1));
        WitnessReport rep = refute_half_ac(h, m0, M, g.threads);
        std::ofstream file;
        std::ostream& os = open_out(file, hier_witness_out);
        os << dump_json(to_json(rep)) << "\n";
        return rep.violates() ? kExitOk : kExitInconclusive;
      }
      return kExitOk;
    }

    if (scan_cmd->parsed()) {
      if (g.dump_config) {
        Json fields{{"spec", scan_spec},     {"kind", scan_kind},   {"point", scan_point},
                    {"dir", scan_dir},       {"rect", scan_rect},   {"levels", scan_levels},
                    {"radii", scan_radii},   {"steps", scan_steps}, {"samples", scan_samples},
                    {"seed", scan_seed},     {"tol", scan_tol}};
        std::cout << dump_json(config_echo("scan", fields, g)) << "\n";
        return kExitOk;
      }
      FunctionSpec f = parse_function(scan_spec);
      std::ofstream file;
      std::ostream& os = open_out(file, scan_out);
      auto parse_rat_list = [](const std::string& text) {
        std::vector<Rat> out;
        std::size_t start = 0;
        while (start <= text.size() && !text.empty()) {
          std::size_t comma = text.find(',', start);
          out.push_back(Rat::parse(
              text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        return out;
      };
      if (scan_kind == "lip") {
        if (scan_point.empty()) throw Error("lip scan needs --point");
        std::vector<Rat> radii = parse_rat_list(scan_radii);
        if (radii.empty())
          for (int k = 2; k <= 16; ++k) radii.push_back(Rat::pow2(-k));
        LipScan scan = lip_at(f, parse_point(scan_point), radii, scan_samples, scan_seed);
        os << "radius\testimate\tflag\n";
        for (std::size_t i = 0; i < scan.estimates.size(); ++i) {
          bool last = i + 1 == scan.estimates.size();
          os << format_double(scan.estimates[i].first) << "\t"
             << format_double(scan.estimates[i].second) << "\t"
             << (last ? (scan.diverging ? "diverging" : "finite-estimate") : "-") << "\n";
        }
        return kExitOk;
      }
      if (scan_kind == "dirderiv") {
        if (scan_point.empty()) throw Error("dirderiv scan needs --point");
        std::vector<Rat> steps = parse_rat_list(scan_steps);
        if (steps.empty())
          for (int k = 3; k <= 18; ++k) steps.push_back(Rat::pow2(-k));
        DirDerivScan scan =
            dir_derivative(f, parse_point(scan_point), parse_point(scan_dir), steps, scan_tol);
        os << "step\testimate\tflag\n";
        for (std::size_t i = 0; i < scan.estimates.size(); ++i) {
          bool last = i + 1 == scan.estimates.size();
          os << format_double(scan.estimates[i].first) << "\t"
             << format_double(scan.estimates[i].second) << "\t"
             << (last ? (scan.converged ? "converged" : "non-converged") : "-") << "\n";
        }
        return scan.converged ? kExitOk : kExitInconclusive;
      }
      if (scan_kind == "energy") {
        if (scan_rect.empty()) throw Error("energy scan needs --rect");
        auto [lo, hi] = parse_point_pair(scan_rect);
        EnergyScan scan = dirichlet_energy(f, Interval(lo, hi), scan_levels);
        os << "level\tenergy\texcluded_cells\tflag\n";
        for (std::size_t i = 0; i < scan.energy.size(); ++i) {
          bool last = i + 1 == scan.energy.size();
          os << (i + 1) << "\t" << format_double(scan.energy[i]) << "\t"
             << scan.excluded_cells[i] << "\t"
             << (last ? (scan.divergence_suspected ? "divergence-suspected" : "stable") : "-")
             << "\n";
        }
        return kExitOk;
      }
      throw Error("unknown scan kind '" + scan_kind + "'");
    }

    if (orc_cmd->parsed()) {
      if (g.dump_config) {
        Json fields{{"spec", orc_spec},   {"class", orc_class}, {"n", orc_n},
                    {"delta", orc_delta}, {"epsilon", orc_eps}, {"grid_r", orc_grid_r},
                    {"max_k", orc_max_k}, {"cap", orc_cap}};
        std::cout << dump_json(config_echo("oracle", fields, g)) << "\n";
        return kExitOk;
      }
      FunctionSpec f = parse_function(orc_spec);
      ACClassSpec cls = parse_class(orc_class, orc_n);
      OracleLimits lim;
      lim.family_cap = orc_cap;
      WitnessReport rep =
          oracle_max(f, orc_grid_r, orc_max_k, Rat::parse(orc_delta), cls, lim, Rat::parse(orc_eps));
      std::ofstream file;
      std::ostream& os = open_out(file, orc_out);
      os << dump_json(to_json(rep)) << "\n";
      return rep.violates() ? kExitOk : kExitInconclusive;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
