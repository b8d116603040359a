#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "genlab/chain.hpp"
#include "genlab/learner.hpp"
#include "genlab/space.hpp"

namespace genlab {

// All loaders reject NaN/Inf and negative entries and throw ParseError with
// the offending path/field.

nlohmann::json load_json_file(const std::string& path);

FiniteMetricSpace space_from_json(const nlohmann::json& j);
Distribution distribution_from_json(const nlohmann::json& j);
JointDistribution joint_from_json(const nlohmann::json& j);

struct ProblemSpec {
  LearningProblem problem;
  AlgorithmKernel kernel;
};

// Schema: {"instances": [...], "hypotheses": {"labels": [...], "dist": [[...]]},
//          "loss": [[...]], "data_dist": [...], "n": 2,
//          "kernel": {"type": "erm" | "gibbs" | "constant" | "memorizer",
//                     "beta": ..., "probs": [...]}}
ProblemSpec problem_from_json(const nlohmann::json& j);

struct ChainConfig {
  Distribution prior;
  std::vector<Channel> layers;
  double k_lip = 1.0;
  double radius = 1.0;
  double mi_wsn = -1.0;  // negative means "default to the first-layer MI"
  long long n = 1;
};

// Schema: {"prior": [...], "layers": [{"type": "bsc", "p": 0.1} |
//          {"type": "erasure", "p": ...} | {"type": "identity", "size": ...} |
//          {"type": "matrix", "rows": [[...]]} |
//          {"type": "random", "in": ..., "out": ..., "seed": ...}],
//          "K": 1.0, "R": 1.0, "mi_wsn": ..., "n": 1}
ChainConfig chain_config_from_json(const nlohmann::json& j);

}  // namespace genlab
