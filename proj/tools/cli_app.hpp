#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permsched/permsched.hpp"

namespace permsched::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kSolverFailure = 3 };

struct CommonArgs {
  std::string instance;
  std::optional<double> epsilon;
  std::optional<double> tol;
  std::string mode = "extended";
};

/// Loads --instance: a file path or a bundled name. With --epsilon the
/// bundled template named by the path's stem is regenerated instead.
inline Instance load_instance(const CommonArgs& args, std::string& id) {
  const std::filesystem::path path(args.instance);
  id = path.stem().string();
  if (args.epsilon) {
    if (!bundled::has(id)) {
      throw ValidationError("--epsilon applies only to bundled instances, not '" + id + "'");
    }
    if (!(*args.epsilon > 0.0 && *args.epsilon < 0.5)) {
      throw ValidationError("--epsilon must lie in (0, 0.5)");
    }
    Instance inst = bundled::by_name(id, *args.epsilon);
    validate(inst);
    return inst;
  }
  std::ifstream in(path);
  if (!in) {
    if (bundled::has(args.instance)) return bundled::by_name(args.instance);
    throw ValidationError("cannot open instance file '" + args.instance + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline SchedulerOptions scheduler_options(const CommonArgs& args) {
  SchedulerOptions opts;
  if (args.mode == "cutting-plane") {
    opts.mode = PermutahedronMode::CuttingPlane;
  } else if (args.mode != "extended") {
    throw ValidationError("unknown --mode '" + args.mode + "'");
  }
  if (args.tol) {
    if (!(*args.tol > 0.0)) throw ValidationError("--tol must be positive");
    opts.certify_tol = *args.tol;
    opts.lp.comparison_tol = *args.tol;
  }
  return opts;
}

inline Schedule run_method(const Instance& inst, Method method, const SchedulerOptions& opts) {
  switch (method) {
    case Method::Lp: return solve_schedule(inst, opts);
    case Method::GreedyMarginal: return greedy_marginal(inst);
    case Method::GreedyFirst: return greedy_optimal_first(inst);
    case Method::Brute: return brute_force(inst);
    case Method::Evaluated: break;
  }
  throw ValidationError("method 'evaluated' cannot be requested");
}

/// Entry point for the `permsched` tool. Writes the report to `out` and
/// diagnostics to `err`; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order incremental element realizations to maximize cumulative subproblem value"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string method = "lp";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", args.instance, "Instance file or bundled name")->required();
    sub->add_option("--epsilon", args.epsilon, "Regenerate a bundled template with this epsilon");
    sub->add_option("--tol", args.tol, "Value-comparison tolerance");
    sub->add_option("--mode", args.mode, "Permutahedron representation")
        ->check(CLI::IsMember({"extended", "cutting-plane"}));
  };
  auto* solve_cmd = app.add_subcommand("solve", "Solve with one method");
  add_common(solve_cmd);
  solve_cmd->add_option("--method", method, "lp|greedy-marginal|greedy-first|brute")
      ->check(CLI::IsMember({"lp", "greedy-marginal", "greedy-first", "brute"}));
  auto* compare_cmd = app.add_subcommand("compare", "Run every method and compare totals");
  add_common(compare_cmd);
  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate an instance");
  add_common(validate_cmd);
  std::string bundle_name;
  std::optional<double> bundle_eps;
  auto* bundle_cmd = app.add_subcommand("bundle", "Print a bundled instance document");
  bundle_cmd->add_option("--name", bundle_name, "g1|g2|d1|d2|d3")->required();
  bundle_cmd->add_option("--epsilon", bundle_eps, "Perturbation epsilon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*bundle_cmd) {
      if (!bundled::has(bundle_name)) throw ValidationError("unknown bundled instance '" + bundle_name + "'");
      out << serialize_instance(bundled::by_name(bundle_name, bundle_eps.value_or(bundled::kDefaultEpsilon)));
      return kOk;
    }
    std::string id;
    const Instance inst = load_instance(args, id);
    const SchedulerOptions opts = scheduler_options(args);
    if (*validate_cmd) {
      nlohmann::json j{{"instance", id},
                       {"valid", true},
                       {"family", inst.family() == Family::Matching ? "matching" : "flow"},
                       {"orderable", inst.orderable.size()},
                       {"fixed", inst.fixed.size()}};
      out << j.dump(2) << "\n";
      return kOk;
    }
    Report report{id, {}};
    if (*solve_cmd) {
      report.schedules.push_back(run_method(inst, method_from_string(method), opts));
    } else {
      for (Method m : {Method::Lp, Method::GreedyMarginal, Method::GreedyFirst, Method::Brute}) {
        if (m == Method::Brute && inst.ground_size() > kBruteForceLimit) {
          err << "skipping brute: " << inst.ground_size() << " elements exceed the limit\n";
          continue;
        }
        report.schedules.push_back(run_method(inst, m, opts));
      }
    }
    out << serialize_report(report, inst);
    return kOk;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::length_error& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace permsched::cli
