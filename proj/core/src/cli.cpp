/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqcflp/approx.hpp"
#include "seqcflp/bnc.hpp"
#include "seqcflp/generator.hpp"
#include "seqcflp/instance_io.hpp"
#include "seqcflp/oracle.hpp"
#include "seqcflp/report.hpp"

namespace seqcflp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string sites_text(const std::vector<int>& sites) {
  std::string s = "[";
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(sites[k]);
  }
  return s + "]";
}

const std::map<std::string, CutConfig> kCutNames{
    {"sc", CutConfig::SC}, {"bi", CutConfig::BI}, {"scbi", CutConfig::SCBI}};
const std::map<std::string, SeparationStrategy> kSepNames{
    {"exact", SeparationStrategy::Exact}, {"approx", SeparationStrategy::Hybrid}};

struct SolveFlags {
  std::string cuts = "scbi";
  std::string sep = "approx";
  double time_limit = 3600.0;
  double tol = 1e-6;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();

  void attach(CLI::App* cmd, bool with_cuts = true) {
    if (with_cuts) {
      cmd->add_option("--cuts", cuts, "Cut families: sc, bi or scbi")
          ->check(CLI::IsMember({"sc", "bi", "scbi"}))
          ->capture_default_str();
    }
    cmd->add_option("--sep", sep, "Separation: exact, or approx (approximate first)")
        ->check(CLI::IsMember({"exact", "approx"}))
        ->capture_default_str();
    cmd->add_option("--time-limit", time_limit, "Seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol", tol, "Violation tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--node-limit", node_limit, "Maximum processed nodes");
  }

  SolverConfig config() const {
    SolverConfig c;
    c.cuts = kCutNames.at(cuts);
    c.separation = kSepNames.at(sep);
    c.time_limit = time_limit;
    c.tol = tol;
    c.node_limit = node_limit;
    return c;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential competitive facility location workbench", "seqcflp"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen
  GeneratorSpec gen;
  std::string h_mode = "uniform";
  std::string out_dir = ".";
  std::string out_file;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random planar instance");
  gen_cmd->set_help_flag("--help", "Print this help message and exit");
  gen_cmd->add_option("-I,--customers", gen.num_customers, "Customers")->required()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("-J,--sites", gen.num_sites, "Candidate sites")->required()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("-p", gen.p, "Leader budget")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("-r", gen.r, "Follower budget")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--beta", gen.beta, "Distance sensitivity")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--side", gen.square_side, "Square side length")
      ->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--h", h_mode, "Demand shares: uniform or random")
      ->check(CLI::IsMember({"uniform", "random"}))->capture_default_str();
  gen_cmd->add_option("--out-dir", out_dir, "Directory for I-J-p-r.json")
      ->capture_default_str();
  gen_cmd->add_option("-o,--output", out_file, "Explicit output path");
  gen_cmd->callback([&] {
    action = [&]() -> int {
      gen.random_h = h_mode == "random";
      const auto g = generate_instance(gen);
      std::filesystem::path path = out_file.empty()
          ? std::filesystem::path(out_dir) / (instance_name(g.instance) + ".json")
          : std::filesystem::path(out_file);
      write_instance(path, g.instance, &g.geometry);
      out << path.string() << "\n";
      return kExitOk;
    };
  });

  // solve
  SolveFlags solve_flags;
  std::string solve_file;
  bool solve_json = false;
  bool no_timing = false;
  std::int64_t log_interval = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Exact branch-and-cut");
  solve_cmd->add_option("instance", solve_file, "Instance JSON")->required();
  solve_flags.attach(solve_cmd);
  solve_cmd->add_flag("--json", solve_json, "Print a JSON report");
  solve_cmd->add_flag("--no-timing", no_timing, "Omit wall time from the report");
  solve_cmd->add_option("--log-interval", log_interval, "Progress line every N nodes");
  solve_cmd->callback([&] {
    action = [&]() -> int {
      const auto file = read_instance(solve_file);
      SolverConfig cfg = solve_flags.config();
      cfg.log_interval = log_interval;
      cfg.log = log_interval > 0 ? &err : nullptr;
      const auto rep = solve_exact(file.instance, cfg);
      const std::string name = instance_name(file.instance);
      if (solve_json) {
        out << solve_report_json(name, cfg, rep, !no_timing);
      } else {
        out << "instance=" << name << " status=" << to_string(rep.status)
            << " z=" << fmt(rep.z_best) << " bound=" << fmt(rep.z_bound)
            << " gap=" << fmt(rep.gap) << " x=" << sites_text(rep.best_x.sites())
            << " nodes=" << rep.num_nodes << " cuts=" << rep.num_cuts();
        if (!no_timing) out << " time=" << fmt(rep.wall_time);
        out << "\n";
      }
      return rep.status == SolveStatus::Optimal ? kExitOk : kExitLimit;
    };
  });

  // approx
  std::string approx_file;
  double approx_time = 3600.0;
  bool approx_json = false;
  bool approx_no_timing = false;
  bool with_oracle = false;
  auto* approx_cmd = app.add_subcommand("approx", "Constant-ratio approximation");
  approx_cmd->add_option("instance", approx_file, "Instance JSON")->required();
  approx_cmd->add_option("--time-limit", approx_time, "Seconds")->capture_default_str()
      ->check(CLI::PositiveNumber);
  approx_cmd->add_flag("--json", approx_json, "Print a JSON report");
  approx_cmd->add_flag("--no-timing", approx_no_timing, "Omit wall time");
  approx_cmd->add_flag("--with-oracle", with_oracle,
                       "Also enumerate z* and report the objective gap");
  approx_cmd->callback([&] {
    action = [&]() -> int {
      const auto file = read_instance(approx_file);
      ApproxConfig cfg;
      cfg.time_limit = approx_time;
      const auto rep = solve_approx(file.instance, cfg);
      double z_star = std::nan("");
      if (with_oracle) z_star = solve_enumeration(file.instance).z_star;
      const std::string name = instance_name(file.instance);
      if (approx_json) {
        out << approx_report_json(name, rep, z_star, !approx_no_timing);
      } else {
        out << "instance=" << name << " status=" << to_string(rep.status)
            << " z_H=" << fmt(rep.z_H) << " surrogate=" << fmt(rep.surrogate_value)
            << " ratio_lower=" << fmt(rep.ratio_lower)
            << " x=" << sites_text(rep.x_H.sites());
        if (with_oracle) out << " z_star=" << fmt(z_star);
        out << "\n";
      }
      return rep.status == SolveStatus::Optimal ? kExitOk : kExitLimit;
    };
  });

  // oracle
  std::string oracle_file;
  std::uint64_t budget = kDefaultEnumerationBudget;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force enumeration");
  oracle_cmd->add_option("instance", oracle_file, "Instance JSON")->required();
  oracle_cmd->add_option("--budget", budget, "Maximum C(J,p)*C(J,r)*|I|")
      ->capture_default_str();
  oracle_cmd->callback([&] {
    action = [&]() -> int {
      const auto file = read_instance(oracle_file);
      const auto res = solve_enumeration(file.instance, budget);
      out << oracle_report_json(instance_name(file.instance), res);
      return kExitOk;
    };
  });

  // sweep-beta
  std::string sweep_file;
  std::vector<double> betas{0.05, 0.1, 0.2, 0.3, 0.5, 0.8};
  std::string method = "exact";
  SolveFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep-beta",
                                       "Optimal objective over a grid of beta values");
  sweep_cmd->add_option("instance", sweep_file, "Instance JSON with geometry")->required();
  sweep_cmd->add_option("--betas", betas, "Beta grid")->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--method", method, "exact (branch-and-cut) or oracle")
      ->check(CLI::IsMember({"exact", "oracle"}))->capture_default_str();
  sweep_flags.attach(sweep_cmd);
  sweep_cmd->callback([&] {
    action = [&]() -> int {
      const auto file = read_instance(sweep_file);
      if (!file.geometry) {
        throw SchemaError("$.geometry", "sweep-beta needs stored geometry");
      }
      int code = kExitOk;
      std::vector<double> zs;
      out << "beta,z,x,status\n";
      for (double beta : betas) {
        const Instance inst = reweight(file.instance, *file.geometry, beta);
        double z = 0.0;
        std::vector<int> x;
        std::string status = "optimal";
        if (method == "oracle") {
          const auto res = solve_enumeration(inst);
          z = res.z_star;
          x = res.x_star.sites();
        } else {
          const auto rep = solve_exact(inst, sweep_flags.config());
          z = rep.z_best;
          x = rep.best_x.sites();
          status = std::string(to_string(rep.status));
          if (rep.status != SolveStatus::Optimal) code = kExitLimit;
        }
        zs.push_back(z);
        out << fmt(beta) << "," << fmt(z) << "," << sites_text(x) << "," << status
            << "\n";
      }
      if (betas.size() >= 2) {
        out << "# spearman=" << fmt(spearman(betas, zs)) << "\n";
      }
      return code;
    };
  });

  // report
  std::vector<std::string> report_files;
  std::vector<std::string> report_cuts{"sc", "bi", "scbi"};
  SolveFlags report_flags;
  bool report_no_timing = false;
  auto* report_cmd = app.add_subcommand("report", "Benchmark table as CSV");
  report_cmd->add_option("instances", report_files, "Instance JSON files")->required();
  report_cmd->add_option("--configs", report_cuts, "Cut configurations")
      ->delimiter(',')->check(CLI::IsMember({"sc", "bi", "scbi"}))
      ->capture_default_str();
  report_flags.attach(report_cmd, false);
  report_cmd->add_flag("--no-timing", report_no_timing, "Print 0 for Time(s)");
  report_cmd->callback([&] {
    action = [&]() -> int {
      int code = kExitOk;
      out << csv_header() << "\n";
      for (const auto& path : report_files) {
        const auto file = read_instance(path);
        const std::string name =
            std::filesystem::path(path).stem().string();
        for (const auto& c : report_cuts) {
          SolveFlags flags = report_flags;
          flags.cuts = c;
          const SolverConfig cfg = flags.config();
          const auto rep = solve_exact(file.instance, cfg);
          auto row = make_report_row(name, cfg, rep);
          if (report_no_timing) row.time = 0.0;
          out << csv_row(row) << "\n";
          if (rep.status != SolveStatus::Optimal) code = kExitLimit;
        }
      }
      return code;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (!action) return kExitInputError;
  try {
    return action();
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const EnumerationBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_cli(int argc, const char* const* argv) {
  return run_cli(argc, argv, std::cout, std::cerr);
}

}  // namespace seqcflp
