#include "genlab/random_instances.hpp"

#include <algorithm>

namespace genlab {

FiniteMetricSpace random_space(SplitMix64& rng, int size) {
  const std::size_t n = static_cast<std::size_t>(size);
  Matrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.1 + 1.9 * rng.u01();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  // Floyd-Warshall closure enforces the triangle inequality while keeping
  // every entry positive (entries only shrink, floor stays at 0.1).
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
      }
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

Distribution random_distribution(SplitMix64& rng, int size, bool allow_zeros) {
  const std::size_t n = static_cast<std::size_t>(size);
  std::vector<double> probs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) probs[i] = rng.exp1();
  if (allow_zeros && n > 1) {
    // Zero out a strict subset of coordinates.
    const int zeros = rng.uniform_int(1, size - 1);
    for (int k = 0; k < zeros; ++k) {
      probs[static_cast<std::size_t>(rng.uniform_int(0, size - 1))] = 0.0;
    }
    bool any = false;
    for (double p : probs) any = any || p > 0.0;
    if (!any) probs[0] = 1.0;
  }
  NeumaierSum total;
  for (double p : probs) total.add(p);
  for (std::size_t i = 0; i < n; ++i) probs[i] /= total.value();
  return Distribution(std::move(probs));
}

LearningProblem random_problem(SplitMix64& rng, const RandomProblemCaps& caps,
                               bool force_n1) {
  const int z_count = rng.uniform_int(2, caps.max_instances);
  const int w_count = force_n1 ? rng.uniform_int(z_count, caps.max_hypotheses)
                               : rng.uniform_int(2, caps.max_hypotheses);
  const int n = force_n1 ? 1 : rng.uniform_int(1, caps.max_n);

  std::vector<std::string> instances;
  instances.reserve(static_cast<std::size_t>(z_count));
  for (int z = 0; z < z_count; ++z) instances.push_back("z" + std::to_string(z));

  FiniteMetricSpace hypotheses = random_space(rng, w_count);
  Matrix loss(static_cast<std::size_t>(w_count), static_cast<std::size_t>(z_count));
  for (std::size_t w = 0; w < loss.rows(); ++w) {
    for (std::size_t z = 0; z < loss.cols(); ++z) {
      loss(w, z) = caps.max_loss * rng.u01();
    }
  }
  Distribution data = random_distribution(rng, z_count, /*allow_zeros=*/false);
  return LearningProblem(std::move(instances), std::move(hypotheses), std::move(loss),
                         std::move(data), n);
}

SweepCase sweep_case(std::uint64_t master_seed, std::uint64_t trial,
                     const RandomProblemCaps& caps) {
  SplitMix64 rng = trial_stream(master_seed, trial);
  const int which = static_cast<int>(trial % 6);
  const bool memorizer_case = which == 5;
  LearningProblem problem = random_problem(rng, caps, memorizer_case);
  AlgorithmKernel kernel = [&] {
    switch (which) {
      case 0: return kernels::constant(problem);
      case 1: return kernels::erm(problem);
      case 2: return kernels::gibbs(problem, 0.5);
      case 3: return kernels::gibbs(problem, 2.0);
      case 4: return kernels::gibbs(problem, 8.0);
      default: return kernels::memorizer(problem);
    }
  }();
  return {std::move(problem), std::move(kernel)};
}

RandomPair random_pair(std::uint64_t master_seed, std::uint64_t trial, int max_size) {
  SplitMix64 rng = trial_stream(master_seed, trial);
  const int size = rng.uniform_int(2, max_size);
  FiniteMetricSpace space = random_space(rng, size);
  const int flavor = rng.uniform_int(0, 9);
  Distribution p = random_distribution(rng, size, /*allow_zeros=*/flavor == 0);
  Distribution q = flavor == 1 ? p  // identical pair to hit the equality cases
                               : random_distribution(rng, size,
                                                     /*allow_zeros=*/flavor == 2);
  return {std::move(space), std::move(p), std::move(q)};
}

RandomChainCase random_chain_case(std::uint64_t master_seed, std::uint64_t trial) {
  SplitMix64 rng = trial_stream(master_seed, trial);
  const std::size_t x_size = static_cast<std::size_t>(rng.uniform_int(2, 5));
  const std::size_t y_size = static_cast<std::size_t>(rng.uniform_int(2, 5));
  const std::size_t z_size = static_cast<std::size_t>(rng.uniform_int(2, 5));
  Distribution prior = random_distribution(rng, static_cast<int>(x_size));
  Channel first = channels::random_full_support(rng, x_size, y_size);
  Channel second = channels::random_full_support(rng, y_size, z_size);
  return {std::move(prior), std::move(first), std::move(second)};
}

}  // namespace genlab
