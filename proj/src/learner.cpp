#include "genlab/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genlab/errors.hpp"
#include "genlab/transport.hpp"

namespace genlab {

namespace {

std::vector<double> empirical_risks(const Matrix& loss, std::span<const int> sample) {
  std::vector<double> risks(loss.rows(), 0.0);
  for (std::size_t w = 0; w < loss.rows(); ++w) {
    NeumaierSum s;
    for (int z : sample) s.add(loss(w, static_cast<std::size_t>(z)));
    risks[w] = s.value() / static_cast<double>(sample.size());
  }
  return risks;
}

}  // namespace

LearningProblem::LearningProblem(std::vector<std::string> instances,
                                 FiniteMetricSpace hypotheses, Matrix loss,
                                 Distribution data_dist, int n)
    : instances_(std::move(instances)),
      hypotheses_(std::move(hypotheses)),
      loss_(std::move(loss)),
      data_dist_(std::move(data_dist)),
      n_(n) {
  if (instances_.empty()) throw DimensionMismatch("instance set is empty");
  if (loss_.rows() != hypotheses_.size() || loss_.cols() != instances_.size()) {
    throw DimensionMismatch("loss matrix must be |W| x |Z|");
  }
  if (data_dist_.size() != instances_.size()) {
    throw DimensionMismatch("data distribution does not match instance set");
  }
  if (n_ < 1) throw DimensionMismatch("sample size must be positive");
  for (std::size_t w = 0; w < loss_.rows(); ++w) {
    for (std::size_t z = 0; z < loss_.cols(); ++z) {
      if (!std::isfinite(loss_(w, z)) || loss_(w, z) < 0.0) {
        throw MetricViolation("loss entries must be finite and nonnegative");
      }
    }
  }
}

namespace kernels {

AlgorithmKernel constant(const LearningProblem& problem,
                         std::optional<Distribution> output) {
  Distribution out = output.value_or(Distribution::uniform(problem.num_hypotheses()));
  if (out.size() != problem.num_hypotheses()) {
    throw DimensionMismatch("constant kernel output does not match hypothesis space");
  }
  return AlgorithmKernel("constant", true,
                         [out](std::span<const int>) { return out; });
}

AlgorithmKernel memorizer(const LearningProblem& problem) {
  if (problem.sample_size() != 1) {
    throw DimensionMismatch("memorizer kernel requires n = 1");
  }
  if (problem.num_hypotheses() < problem.num_instances()) {
    throw DimensionMismatch("memorizer kernel needs a hypothesis per instance");
  }
  const std::size_t m = problem.num_hypotheses();
  return AlgorithmKernel("memorizer", true, [m](std::span<const int> sample) {
    return Distribution::point_mass(m, static_cast<std::size_t>(sample.front()));
  });
}

AlgorithmKernel erm(const LearningProblem& problem) {
  const Matrix loss = problem.loss_matrix();
  const std::size_t m = problem.num_hypotheses();
  return AlgorithmKernel("erm", true, [loss, m](std::span<const int> sample) {
    const std::vector<double> risks = empirical_risks(loss, sample);
    std::size_t best = 0;
    for (std::size_t w = 1; w < m; ++w) {
      if (risks[w] < risks[best]) best = w;  // lowest index wins ties
    }
    return Distribution::point_mass(m, best);
  });
}

AlgorithmKernel gibbs(const LearningProblem& problem, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw NonpositiveBound("gibbs kernel requires finite beta >= 0");
  }
  const Matrix loss = problem.loss_matrix();
  const std::size_t m = problem.num_hypotheses();
  return AlgorithmKernel(
      "gibbs", true, [loss, m, beta](std::span<const int> sample) {
        const std::vector<double> risks = empirical_risks(loss, sample);
        const double scale = beta * static_cast<double>(sample.size());
        // Shift by the minimum for numerical stability; it cancels in the
        // normalization.
        const double shift = *std::min_element(risks.begin(), risks.end());
        std::vector<double> weights(m, 0.0);
        NeumaierSum total;
        for (std::size_t w = 0; w < m; ++w) {
          weights[w] = std::exp(-scale * (risks[w] - shift));
          total.add(weights[w]);
        }
        for (std::size_t w = 0; w < m; ++w) weights[w] /= total.value();
        return Distribution(std::move(weights));
      });
}

}  // namespace kernels

DatasetEnumeration enumerate_datasets(const LearningProblem& problem, std::size_t cap) {
  const std::size_t z_count = problem.num_instances();
  const int n = problem.sample_size();

  double count = 1.0;
  for (int i = 0; i < n; ++i) count *= static_cast<double>(z_count);
  if (count > static_cast<double>(cap)) {
    throw EnumerationCapExceeded("dataset enumeration needs " + format_value(count, 6) +
                                 " tuples, cap is " + std::to_string(cap));
  }
  const std::size_t total = static_cast<std::size_t>(count);

  DatasetEnumeration out;
  out.tuples.reserve(total);
  out.weights.reserve(total);
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  const Distribution& d = problem.data_dist();
  for (std::size_t index = 0; index < total; ++index) {
    double weight = 1.0;
    for (int i : tuple) weight *= d[static_cast<std::size_t>(i)];
    out.tuples.push_back(tuple);
    out.weights.push_back(weight);
    // Odometer increment, last position fastest, so tuples are sorted.
    for (int pos = n - 1; pos >= 0; --pos) {
      if (++tuple[static_cast<std::size_t>(pos)] < static_cast<int>(z_count)) break;
      tuple[static_cast<std::size_t>(pos)] = 0;
    }
  }
  return out;
}

DerivedDistributions derive_distributions(const LearningProblem& problem,
                                          const AlgorithmKernel& kernel,
                                          std::size_t cap) {
  const DatasetEnumeration data = enumerate_datasets(problem, cap);
  const std::size_t z_count = problem.num_instances();
  const std::size_t w_count = problem.num_hypotheses();
  const double n = static_cast<double>(problem.sample_size());

  std::vector<NeumaierSum> p_w_acc(w_count);
  Matrix p_sn_w(data.tuples.size(), w_count);
  std::vector<std::vector<NeumaierSum>> p_wz_acc(
      w_count, std::vector<NeumaierSum>(z_count));

  std::vector<double> counts(z_count, 0.0);
  for (std::size_t s = 0; s < data.tuples.size(); ++s) {
    const Distribution out = kernel(data.tuples[s]);
    if (out.size() != w_count) {
      throw DimensionMismatch("kernel output does not match hypothesis space");
    }
    std::fill(counts.begin(), counts.end(), 0.0);
    for (int z : data.tuples[s]) counts[static_cast<std::size_t>(z)] += 1.0;

    for (std::size_t w = 0; w < w_count; ++w) {
      const double mass = data.weights[s] * out[w];
      p_sn_w(s, w) = mass;
      p_w_acc[w].add(mass);
      if (mass != 0.0) {
        for (std::size_t z = 0; z < z_count; ++z) {
          if (counts[z] != 0.0) p_wz_acc[w][z].add(mass * counts[z] / n);
        }
      }
    }
  }

  std::vector<double> p_w(w_count, 0.0);
  for (std::size_t w = 0; w < w_count; ++w) p_w[w] = p_w_acc[w].value();

  Matrix p_wz(w_count, z_count);
  for (std::size_t w = 0; w < w_count; ++w) {
    for (std::size_t z = 0; z < z_count; ++z) {
      p_wz(w, z) = std::max(0.0, p_wz_acc[w][z].value());
    }
  }

  DerivedDistributions derived{
      Distribution(p_w),
      JointDistribution(p_wz),
      {},
      JointDistribution(std::move(p_sn_w)),
      {},
      {},
  };

  // Conditionals P_{W|z}: columns of p_wz normalized. Instances with zero
  // data probability get the marginal so they never contribute anywhere.
  derived.p_w_given_z.reserve(z_count);
  for (std::size_t z = 0; z < z_count; ++z) {
    NeumaierSum col;
    for (std::size_t w = 0; w < w_count; ++w) col.add(derived.p_wz.at(w, z));
    const double mass = col.value();
    if (mass <= 0.0) {
      derived.p_w_given_z.push_back(derived.p_w);
      continue;
    }
    std::vector<double> cond(w_count, 0.0);
    for (std::size_t w = 0; w < w_count; ++w) cond[w] = derived.p_wz.at(w, z) / mass;
    derived.p_w_given_z.emplace_back(std::move(cond));
  }

  derived.mi_w_sn = mutual_information(derived.p_sn_w);
  derived.mi_w_z = mutual_information(derived.p_wz);
  return derived;
}

GenErrorRoutes gen_error_routes(const LearningProblem& problem,
                                const AlgorithmKernel& kernel, std::size_t cap) {
  const DatasetEnumeration data = enumerate_datasets(problem, cap);
  const std::size_t z_count = problem.num_instances();
  const std::size_t w_count = problem.num_hypotheses();
  const Distribution& d = problem.data_dist();
  const double n = static_cast<double>(problem.sample_size());

  // Population risk per hypothesis.
  std::vector<double> population(w_count, 0.0);
  for (std::size_t w = 0; w < w_count; ++w) {
    NeumaierSum s;
    for (std::size_t z = 0; z < z_count; ++z) s.add(d[z] * problem.loss(w, z));
    population[w] = s.value();
  }

  NeumaierSum direct;
  std::vector<NeumaierSum> p_w_acc(w_count);
  std::vector<std::vector<NeumaierSum>> p_wz_acc(
      w_count, std::vector<NeumaierSum>(z_count));
  std::vector<double> counts(z_count, 0.0);
  for (std::size_t s = 0; s < data.tuples.size(); ++s) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (int z : data.tuples[s]) counts[static_cast<std::size_t>(z)] += 1.0;

    const Distribution out = kernel(data.tuples[s]);
    for (std::size_t w = 0; w < w_count; ++w) {
      const double mass = data.weights[s] * out[w];
      if (mass == 0.0) continue;
      NeumaierSum empirical;
      for (std::size_t z = 0; z < z_count; ++z) {
        if (counts[z] != 0.0) empirical.add(counts[z] * problem.loss(w, z));
      }
      direct.add(mass * (population[w] - empirical.value() / n));
      p_w_acc[w].add(mass);
      for (std::size_t z = 0; z < z_count; ++z) {
        if (counts[z] != 0.0) p_wz_acc[w][z].add(mass * counts[z] / n);
      }
    }
  }

  // Identity route: sum_z sum_w loss(w,z) (pW(w) D(z) - pWz(w,z)), the
  // conditional decomposition with the division by D(z) cancelled out.
  NeumaierSum via;
  for (std::size_t z = 0; z < z_count; ++z) {
    for (std::size_t w = 0; w < w_count; ++w) {
      via.add(problem.loss(w, z) *
              (p_w_acc[w].value() * d[z] - p_wz_acc[w][z].value()));
    }
  }
  return {direct.value(), via.value()};
}

double expected_generalization_error(const LearningProblem& problem,
                                     const AlgorithmKernel& kernel, std::size_t cap) {
  const GenErrorRoutes routes = gen_error_routes(problem, kernel, cap);
  if (std::abs(routes.direct - routes.via_conditionals) > 1e-10) {
    throw SolverFailure("generalization error routes disagree: " +
                            format_value(routes.direct) + " vs " +
                            format_value(routes.via_conditionals),
                        0);
  }
  return routes.direct;
}

double algorithmic_transport_cost(const LearningProblem& problem,
                                  const DerivedDistributions& derived) {
  const Distribution& d = problem.data_dist();
  NeumaierSum s;
  for (std::size_t z = 0; z < problem.num_instances(); ++z) {
    if (d[z] <= 0.0) continue;
    s.add(d[z] *
          wasserstein1(derived.p_w, derived.p_w_given_z[z], problem.hypotheses()).first);
  }
  return s.value();
}

double algorithmic_transport_cost(const LearningProblem& problem,
                                  const AlgorithmKernel& kernel, std::size_t cap) {
  return algorithmic_transport_cost(problem, derive_distributions(problem, kernel, cap));
}

double expected_bl_cost(const LearningProblem& problem,
                        const DerivedDistributions& derived) {
  const Distribution& d = problem.data_dist();
  NeumaierSum s;
  for (std::size_t z = 0; z < problem.num_instances(); ++z) {
    if (d[z] <= 0.0) continue;
    s.add(d[z] *
          bounded_lipschitz(derived.p_w, derived.p_w_given_z[z], problem.hypotheses()));
  }
  return s.value();
}

double expected_bl_cost(const LearningProblem& problem, const AlgorithmKernel& kernel,
                        std::size_t cap) {
  return expected_bl_cost(problem, derive_distributions(problem, kernel, cap));
}

ProblemConstants problem_constants_allow_infinite(const LearningProblem& problem) {
  const std::size_t z_count = problem.num_instances();
  const std::size_t w_count = problem.num_hypotheses();

  double sup_loss = 0.0;
  for (std::size_t w = 0; w < w_count; ++w) {
    for (std::size_t z = 0; z < z_count; ++z) {
      sup_loss = std::max(sup_loss, problem.loss(w, z));
    }
  }

  double lipschitz = 0.0;
  for (std::size_t z = 0; z < z_count; ++z) {
    for (std::size_t w = 0; w < w_count; ++w) {
      for (std::size_t v = w + 1; v < w_count; ++v) {
        const double gap = std::abs(problem.loss(w, z) - problem.loss(v, z));
        if (gap == 0.0) continue;
        const double dist = problem.hypotheses().dist(w, v);
        if (dist <= 0.0) {
          lipschitz = std::numeric_limits<double>::infinity();
        } else {
          lipschitz = std::max(lipschitz, gap / dist);
        }
      }
    }
  }
  return {lipschitz, sup_loss, std::max(sup_loss, lipschitz),
          problem.hypotheses().diameter()};
}

ProblemConstants problem_constants(const LearningProblem& problem) {
  const ProblemConstants c = problem_constants_allow_infinite(problem);
  if (std::isinf(c.lipschitz)) {
    throw ZeroDistance(
        "distinct hypotheses at distance zero carry different losses; "
        "the Lipschitz constant is infinite");
  }
  return c;
}

McEstimate mc_estimate_transport_cost(const LearningProblem& problem,
                                      const AlgorithmKernel& kernel,
                                      std::uint64_t seed, int trials,
                                      int samples_per_trial) {
  if (trials < 2) {
    throw UsageError("mc_estimate_transport_cost needs at least 2 trials");
  }
  if (samples_per_trial < 1) {
    throw UsageError("samples_per_trial must be positive");
  }
  const std::size_t z_count = problem.num_instances();
  const std::size_t w_count = problem.num_hypotheses();
  const int n = problem.sample_size();
  const Distribution& d = problem.data_dist();

  const auto sample_z = [&](SplitMix64& rng) {
    const double u = rng.u01();
    double acc = 0.0;
    for (std::size_t z = 0; z + 1 < z_count; ++z) {
      acc += d[z];
      if (u < acc) return static_cast<int>(z);
    }
    return static_cast<int>(z_count - 1);
  };

  NeumaierSum mean_acc;
  NeumaierSum sq_acc;
  std::vector<int> sample(static_cast<std::size_t>(n), 0);
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(trial));
    const int z_star = sample_z(rng);

    std::vector<NeumaierSum> marginal(w_count), conditional(w_count);
    for (int rep = 0; rep < samples_per_trial; ++rep) {
      for (int i = 0; i < n; ++i) sample[static_cast<std::size_t>(i)] = sample_z(rng);
      const Distribution out = kernel(sample);
      for (std::size_t w = 0; w < w_count; ++w) marginal[w].add(out[w]);

      // Conditional sampler: plant z* at a uniform position, draw the rest
      // i.i.d.; this realizes P(S | picked example = z*).
      for (int i = 0; i < n; ++i) sample[static_cast<std::size_t>(i)] = sample_z(rng);
      const int pos = rng.uniform_int(0, n - 1);
      sample[static_cast<std::size_t>(pos)] = z_star;
      const Distribution cond_out = kernel(sample);
      for (std::size_t w = 0; w < w_count; ++w) conditional[w].add(cond_out[w]);
    }

    std::vector<double> m(w_count, 0.0), c(w_count, 0.0);
    for (std::size_t w = 0; w < w_count; ++w) {
      m[w] = marginal[w].value() / samples_per_trial;
      c[w] = conditional[w].value() / samples_per_trial;
    }
    const double x = wasserstein1(Distribution(std::move(m)),
                                  Distribution(std::move(c)), problem.hypotheses())
                         .first;
    mean_acc.add(x);
    sq_acc.add(x * x);
  }

  const double t = static_cast<double>(trials);
  const double mean = mean_acc.value() / t;
  const double var = std::max(0.0, (sq_acc.value() - t * mean * mean) / (t - 1.0));
  return {mean, std::sqrt(var / t)};
}

bool check_permutation_invariance(const LearningProblem& problem,
                                  const AlgorithmKernel& kernel, std::size_t cap) {
  const DatasetEnumeration data = enumerate_datasets(problem, cap);
  for (const auto& tuple : data.tuples) {
    const Distribution base = kernel(tuple);
    std::vector<int> perm = tuple;
    std::sort(perm.begin(), perm.end());
    do {
      const Distribution out = kernel(perm);
      for (std::size_t w = 0; w < out.size(); ++w) {
        if (std::abs(out[w] - base[w]) > 1e-12) return false;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return true;
}

}  // namespace genlab
