#include "genlab/cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "genlab/bounds.hpp"
#include "genlab/chain.hpp"
#include "genlab/errors.hpp"
#include "genlab/json_io.hpp"
#include "genlab/lattice.hpp"
#include "genlab/random_instances.hpp"

namespace genlab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCap = 4;

struct MetricsArgs {
  std::string p_path, q_path, space_path, joint_path, metric;
  int lp_max_iters = 10000;
};

struct LatticeArgs {
  int trials = 100;
  std::uint64_t seed = 0;
  int max_size = 8;
  int jobs = 1;
  int lp_max_iters = 10000;
  std::string out;
};

struct ExperimentArgs {
  std::string problem_path;
  std::string out;
  std::size_t enum_cap = kDefaultEnumerationCap;
  int jobs = 1;
  int lp_max_iters = 10000;
};

struct ChainArgs {
  std::string config_path;
  std::string out;
  int jobs = 1;
};

int cmd_metrics(const MetricsArgs& args) {
  const LpOptions lp{args.lp_max_iters, 1e-9};
  double value = 0.0;
  if (args.metric == "mi") {
    if (args.joint_path.empty()) {
      throw UsageError("metric 'mi' needs --joint (a joint probability matrix)");
    }
    value = mutual_information(joint_from_json(load_json_file(args.joint_path))).value;
  } else {
    if (args.p_path.empty() || args.q_path.empty()) {
      throw UsageError("metric '" + args.metric + "' needs --p and --q");
    }
    const Distribution p = distribution_from_json(load_json_file(args.p_path));
    const Distribution q = distribution_from_json(load_json_file(args.q_path));
    const bool needs_space =
        args.metric == "w1" || args.metric == "prokhorov" || args.metric == "bl";
    std::optional<FiniteMetricSpace> space;
    if (needs_space) {
      if (args.space_path.empty()) {
        throw UsageError("metric '" + args.metric + "' needs --space");
      }
      space = space_from_json(load_json_file(args.space_path));
    }
    if (args.metric == "w1") {
      value = wasserstein1(p, q, *space, lp).first;
    } else if (args.metric == "tv") {
      value = total_variation(p, q);
    } else if (args.metric == "kl") {
      value = kl(p, q).value;
    } else if (args.metric == "hellinger") {
      value = hellinger(p, q);
    } else if (args.metric == "chi2") {
      value = chi_squared(p, q).value;
    } else if (args.metric == "prokhorov") {
      value = prokhorov(p, q, *space);
    } else if (args.metric == "bl") {
      value = bounded_lipschitz(p, q, *space, lp);
    } else {
      throw UsageError("unknown metric '" + args.metric + "'");
    }
  }
  std::cout << format_value(value) << "\n";
  return kExitOk;
}

// Deterministic parallel map: worker w handles trials w, w + jobs, ...; the
// blocks are concatenated in ascending trial order, so output bytes do not
// depend on the worker count.
template <typename Fn>
std::vector<std::string> parallel_blocks(int trials, int jobs, Fn&& render) {
  std::vector<std::string> blocks(static_cast<std::size_t>(trials));
  if (jobs <= 1) {
    for (int t = 0; t < trials; ++t) blocks[static_cast<std::size_t>(t)] = render(t);
    return blocks;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (int t = w; t < trials; t += jobs) {
        blocks[static_cast<std::size_t>(t)] = render(t);
      }
    });
  }
  for (auto& worker : workers) worker.join();
  return blocks;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << content;
}

int cmd_verify_lattice(const LatticeArgs& args) {
  if (args.trials < 1) throw UsageError("--trials must be at least 1");
  if (args.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (args.max_size < 2 || args.max_size > 16) {
    throw UsageError("--max-size must lie in [2, 16]");
  }

  std::atomic<bool> violation{false};
  const auto render = [&](int trial) {
    const RandomPair pair =
        random_pair(args.seed, static_cast<std::uint64_t>(trial), args.max_size);
    std::string block;
    for (const SlackReport& report : verify_all(pair.p, pair.q, pair.space)) {
      if (!report.vacuous && report.slack < -1e-8) violation.store(true);
      block += std::to_string(trial) + "," + report.edge.name() + "," +
               format_value(report.lhs) + "," + format_value(report.rhs) + "," +
               format_value(report.slack) + "\n";
    }
    return block;
  };

  std::string csv = "trial_id,edge,lhs,rhs,slack\n";
  for (std::string& block : parallel_blocks(args.trials, args.jobs, render)) {
    csv += block;
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_file(args.out, csv);
  }
  return violation.load() ? kExitViolation : kExitOk;
}

std::string report_csv(const std::vector<BoundReport>& reports) {
  std::string csv = "bound_name,value,true_gen_error,slack,assumptions_met,vacuous\n";
  for (const BoundReport& r : reports) {
    csv += r.name + "," + format_value(r.value) + "," +
           format_value(r.true_gen_error) + "," +
           format_value(r.value - r.true_gen_error) + "," +
           (r.applicable() ? "true" : "false") + "," +
           (r.vacuous() ? "true" : "false") + "\n";
  }
  return csv;
}

int cmd_gen_experiment(const ExperimentArgs& args) {
  const nlohmann::json config = load_json_file(args.problem_path);
  ProblemSpec spec = problem_from_json(config);
  EvaluateOptions opts;
  opts.cap = args.enum_cap;
  if (config.contains("vc_class")) {
    opts.vc_class = HypothesisClass(
        Matrix::from_rows(config["vc_class"]["predictions"]
                              .get<std::vector<std::vector<double>>>()));
  }
  const std::vector<BoundReport> reports = evaluate_all(spec.problem, spec.kernel, opts);

  const std::string csv = report_csv(reports);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_file(args.out, csv);
  }
  for (const BoundReport& r : reports) {
    if (r.applicable() && !r.valid) return kExitViolation;
  }
  return kExitOk;
}

int cmd_chain(const ChainArgs& args) {
  const ChainConfig config = chain_config_from_json(load_json_file(args.config_path));
  const DepthDecay decay = depth_decay(config.prior, config.layers);
  const double mi_wsn = config.mi_wsn >= 0.0 ? config.mi_wsn : decay.mi_seq.front();

  std::string csv = "depth,mi,eta_product_bound,depth_bound\n";
  double tail_product = 1.0;  // prod of eta_2..eta_k
  double full_product = 1.0;  // prod of eta_1..eta_k
  for (std::size_t k = 0; k < decay.mi_seq.size(); ++k) {
    if (k > 0) tail_product *= decay.report.per_layer[k];
    full_product *= decay.report.per_layer[k];
    const double geo_mean = std::pow(full_product, 1.0 / static_cast<double>(k + 1));
    const double bound =
        depth_contraction_bound(config.k_lip, config.radius, static_cast<int>(k + 1),
                                geo_mean, mi_wsn, config.n);
    csv += std::to_string(k + 1) + "," + format_value(decay.mi_seq[k]) + "," +
           format_value(tail_product * decay.mi_seq.front()) + "," +
           format_value(bound) + "\n";
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_file(args.out, csv);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"finite-space laboratory for generalization bounds and "
               "probability-metric inequalities"};
  app.require_subcommand(1);

  MetricsArgs metrics_args;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "evaluate one probability metric on distribution files");
  metrics->add_option("--p", metrics_args.p_path, "first distribution JSON");
  metrics->add_option("--q", metrics_args.q_path, "second distribution JSON");
  metrics->add_option("--space", metrics_args.space_path, "metric space JSON");
  metrics->add_option("--joint", metrics_args.joint_path, "joint matrix JSON (mi)");
  metrics
      ->add_option("--metric", metrics_args.metric,
                   "one of w1, tv, kl, mi, hellinger, chi2, prokhorov, bl")
      ->required();
  metrics->add_option("--lp-max-iters", metrics_args.lp_max_iters, "LP iteration cap");

  LatticeArgs lattice_args;
  CLI::App* lattice = app.add_subcommand(
      "verify-lattice", "certify the metric-relation edges on random pairs");
  lattice->add_option("--trials", lattice_args.trials, "number of random pairs")
      ->required();
  lattice->add_option("--seed", lattice_args.seed, "master seed")->required();
  lattice->add_option("--max-size", lattice_args.max_size, "largest space size");
  lattice->add_option("--jobs", lattice_args.jobs, "worker threads");
  lattice->add_option("--lp-max-iters", lattice_args.lp_max_iters, "LP iteration cap");
  lattice->add_option("--out", lattice_args.out, "output CSV path");

  ExperimentArgs experiment_args;
  CLI::App* experiment = app.add_subcommand(
      "gen-experiment", "evaluate every generalization bound on a problem file");
  experiment->add_option("--problem", experiment_args.problem_path, "problem JSON")
      ->required();
  experiment->add_option("--out", experiment_args.out, "output CSV path");
  experiment->add_option("--enum-cap", experiment_args.enum_cap,
                         "dataset enumeration cap");
  experiment->add_option("--jobs", experiment_args.jobs, "worker threads");
  experiment->add_option("--lp-max-iters", experiment_args.lp_max_iters,
                         "LP iteration cap");

  ChainArgs chain_args;
  CLI::App* chain = app.add_subcommand(
      "chain", "mutual-information decay and depth bound along a channel chain");
  chain->add_option("--config", chain_args.config_path, "chain config JSON")
      ->required();
  chain->add_option("--out", chain_args.out, "output CSV path");
  chain->add_option("--jobs", chain_args.jobs, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "genlab: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (metrics->parsed()) return cmd_metrics(metrics_args);
    if (lattice->parsed()) return cmd_verify_lattice(lattice_args);
    if (experiment->parsed()) return cmd_gen_experiment(experiment_args);
    if (chain->parsed()) return cmd_chain(chain_args);
    throw UsageError("no subcommand given");
  } catch (const SolverFailure& e) {
    std::cerr << "genlab: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "genlab: " << e.what() << "\n";
    return kExitCap;
  } catch (const SpaceTooLarge& e) {
    std::cerr << "genlab: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "genlab: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "genlab: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace genlab
