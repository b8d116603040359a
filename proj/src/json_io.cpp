#include "genlab/json_io.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "genlab/errors.hpp"

namespace genlab {

namespace {

using nlohmann::json;

double checked_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ParseError(where + ": expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(where + ": NaN/Inf rejected");
  }
  return v;
}

std::vector<double> checked_vector(const json& j, const std::string& where,
                                   bool nonnegative = true) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double v = checked_number(j[i], where + "[" + std::to_string(i) + "]");
    if (nonnegative && v < 0.0) {
      throw ParseError(where + "[" + std::to_string(i) + "]: negative entry rejected");
    }
    out.push_back(v);
  }
  return out;
}

Matrix checked_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty matrix");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(checked_vector(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return Matrix::from_rows(rows);
}

std::vector<std::string> checked_labels(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of labels");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else {
      out.push_back(item.dump());
    }
  }
  return out;
}

const json& require_field(const json& j, const char* field, const std::string& where) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw ParseError(where + ": missing field '" + field + "'");
  }
  return *it;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

FiniteMetricSpace space_from_json(const json& j) {
  try {
    return FiniteMetricSpace(checked_labels(require_field(j, "labels", "space"), "labels"),
                             checked_matrix(require_field(j, "dist", "space"), "dist"));
  } catch (const MetricViolation& e) {
    throw ParseError(std::string("space: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("space: ") + e.what());
  }
}

Distribution distribution_from_json(const json& j) {
  try {
    return Distribution(checked_vector(require_field(j, "probs", "distribution"), "probs"));
  } catch (const MetricViolation& e) {
    throw ParseError(std::string("distribution: ") + e.what());
  }
}

JointDistribution joint_from_json(const json& j) {
  try {
    return JointDistribution(checked_matrix(require_field(j, "probs", "joint"), "probs"));
  } catch (const MetricViolation& e) {
    throw ParseError(std::string("joint: ") + e.what());
  }
}

ProblemSpec problem_from_json(const json& j) {
  const json& hyp = require_field(j, "hypotheses", "problem");
  FiniteMetricSpace hypotheses = [&] {
    try {
      return FiniteMetricSpace(
          checked_labels(require_field(hyp, "labels", "hypotheses"), "hypotheses.labels"),
          checked_matrix(require_field(hyp, "dist", "hypotheses"), "hypotheses.dist"));
    } catch (const Error& e) {
      throw ParseError(std::string("hypotheses: ") + e.what());
    }
  }();

  const json& n_field = require_field(j, "n", "problem");
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
    throw ParseError("problem: n must be a positive integer");
  }

  LearningProblem problem = [&] {
    try {
      return LearningProblem(
          checked_labels(require_field(j, "instances", "problem"), "instances"),
          std::move(hypotheses), checked_matrix(require_field(j, "loss", "problem"), "loss"),
          Distribution(checked_vector(require_field(j, "data_dist", "problem"), "data_dist")),
          n_field.get<int>());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("problem: ") + e.what());
    }
  }();

  const json& kj = require_field(j, "kernel", "problem");
  const std::string type = require_field(kj, "type", "kernel").get<std::string>();
  std::optional<AlgorithmKernel> kernel;
  try {
    if (type == "constant") {
      std::optional<Distribution> out;
      if (kj.contains("probs")) {
        out = Distribution(checked_vector(kj["probs"], "kernel.probs"));
      }
      kernel = kernels::constant(problem, std::move(out));
    } else if (type == "memorizer") {
      kernel = kernels::memorizer(problem);
    } else if (type == "erm") {
      kernel = kernels::erm(problem);
    } else if (type == "gibbs") {
      const double beta = checked_number(require_field(kj, "beta", "kernel"), "kernel.beta");
      kernel = kernels::gibbs(problem, beta);
    } else {
      throw ParseError("kernel: unknown type '" + type + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("kernel: ") + e.what());
  }
  return ProblemSpec{std::move(problem), std::move(*kernel)};
}

ChainConfig chain_config_from_json(const json& j) {
  ChainConfig config{
      Distribution(checked_vector(require_field(j, "prior", "chain"), "prior")),
      {},
  };
  const json& layers = require_field(j, "layers", "chain");
  if (!layers.is_array() || layers.empty()) {
    throw UsageError("chain: layers must be a nonempty array");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const json& layer = layers[i];
    const std::string where = "layers[" + std::to_string(i) + "]";
    const std::string type = require_field(layer, "type", where).get<std::string>();
    try {
      if (type == "bsc") {
        config.layers.push_back(
            channels::bsc(checked_number(require_field(layer, "p", where), where + ".p")));
      } else if (type == "erasure") {
        config.layers.push_back(channels::binary_erasure(
            checked_number(require_field(layer, "p", where), where + ".p")));
      } else if (type == "identity") {
        config.layers.push_back(channels::identity(
            require_field(layer, "size", where).get<std::size_t>()));
      } else if (type == "matrix") {
        config.layers.push_back(
            Channel(checked_matrix(require_field(layer, "rows", where), where + ".rows")));
      } else if (type == "random") {
        SplitMix64 rng(require_field(layer, "seed", where).get<std::uint64_t>());
        config.layers.push_back(channels::random_full_support(
            rng, require_field(layer, "in", where).get<std::size_t>(),
            require_field(layer, "out", where).get<std::size_t>()));
      } else {
        throw ParseError(where + ": unknown layer type '" + type + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.contains("K")) config.k_lip = checked_number(j["K"], "chain.K");
  if (j.contains("R")) config.radius = checked_number(j["R"], "chain.R");
  if (j.contains("mi_wsn")) config.mi_wsn = checked_number(j["mi_wsn"], "chain.mi_wsn");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
      throw ParseError("chain: n must be a positive integer");
    }
    config.n = j["n"].get<long long>();
  }
  return config;
}

}  // namespace genlab
