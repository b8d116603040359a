#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genlab/chain.hpp"
#include "genlab/learner.hpp"
#include "genlab/space.hpp"

namespace genlab {

// Seeded generators for the property sweeps. Everything here is a pure
// function of the SplitMix64 stream, so trial outputs are reproducible and
// independent of worker count.

// Random metric space: entries drawn in [0.1, 2], symmetrized, then closed
// under shortest paths so the triangle inequality holds exactly.
FiniteMetricSpace random_space(SplitMix64& rng, int size);

// Normalized positive draws; optionally zeroes a few coordinates (never all).
Distribution random_distribution(SplitMix64& rng, int size, bool allow_zeros = false);

struct RandomProblemCaps {
  int max_instances = 4;
  int max_hypotheses = 5;
  int max_n = 4;
  double max_loss = 5.0;
};

// A random learning problem within the caps. When force_n1 is set the sample
// size is 1 and the hypothesis count at least the instance count, so the
// memorizer kernel is constructible.
LearningProblem random_problem(SplitMix64& rng, const RandomProblemCaps& caps = {},
                               bool force_n1 = false);

// Kernel cycling used by the soundness sweeps: constant, erm,
// gibbs(0.5 / 2 / 8), and memorizer on n = 1 problems.
struct SweepCase {
  LearningProblem problem;
  AlgorithmKernel kernel;
};

SweepCase sweep_case(std::uint64_t master_seed, std::uint64_t trial,
                     const RandomProblemCaps& caps = {});

// Random pair of distributions on a random space, sizes 2..max_size; a
// fraction of pairs has zero entries and occasionally p = q exactly.
struct RandomPair {
  FiniteMetricSpace space;
  Distribution p;
  Distribution q;
};

RandomPair random_pair(std::uint64_t master_seed, std::uint64_t trial, int max_size = 8);

// Random full-support channel chain X -> Y -> Z on spaces of 2..5 points.
struct RandomChainCase {
  Distribution prior;
  Channel first;
  Channel second;
};

RandomChainCase random_chain_case(std::uint64_t master_seed, std::uint64_t trial);

}  // namespace genlab
