#include "genlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <set>

#include "genlab/errors.hpp"
#include "genlab/transport.hpp"

namespace genlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Distribution flatten(const JointDistribution& joint) {
  std::vector<double> flat;
  flat.reserve(joint.rows() * joint.cols());
  for (std::size_t i = 0; i < joint.rows(); ++i) {
    for (std::size_t j = 0; j < joint.cols(); ++j) flat.push_back(joint.at(i, j));
  }
  return Distribution(std::move(flat));
}

double expected_prokhorov(const LearningProblem& problem,
                          const DerivedDistributions& derived) {
  const Distribution& d = problem.data_dist();
  NeumaierSum s;
  for (std::size_t z = 0; z < problem.num_instances(); ++z) {
    if (d[z] <= 0.0) continue;
    s.add(d[z] * prokhorov(derived.p_w, derived.p_w_given_z[z], problem.hypotheses()));
  }
  return s.value();
}

bool log_enabled() {
  const char* env = std::getenv("GENLAB_LOG");
  return env != nullptr && env[0] != '\0';
}

}  // namespace

// Computed on the flattened vectors.
double joint_product_tv(const LearningProblem& problem,
                        const DerivedDistributions& derived) {
  return total_variation(
      flatten(product_distribution(derived.p_w, problem.data_dist())),
      flatten(derived.p_wz));
}

double joint_product_hellinger(const LearningProblem& problem,
                               const DerivedDistributions& derived) {
  return hellinger(flatten(product_distribution(derived.p_w, problem.data_dist())),
                   flatten(derived.p_wz));
}

InfoValue joint_product_chi_squared(const JointDistribution& joint) {
  const Distribution row = joint.row_marginal();
  const Distribution col = joint.col_marginal();
  NeumaierSum s;
  for (std::size_t i = 0; i < joint.rows(); ++i) {
    for (std::size_t j = 0; j < joint.cols(); ++j) {
      const double prod = row[i] * col[j];
      const double v = joint.at(i, j);
      if (prod <= 0.0) {
        if (v > 0.0) return {kInf};
        continue;
      }
      const double d = v - prod;
      s.add(d * d / prod);
    }
  }
  return {std::max(0.0, s.value())};
}

double transport_cost_bound(const LearningProblem& problem,
                            const DerivedDistributions& derived,
                            const ProblemConstants& constants) {
  return constants.lipschitz * algorithmic_transport_cost(problem, derived);
}

double tv_diameter_bound(const LearningProblem& problem,
                         const DerivedDistributions& derived,
                         const ProblemConstants& constants) {
  return constants.lipschitz * constants.diam * joint_product_tv(problem, derived);
}

double bounded_loss_tv_bound(const LearningProblem& problem,
                             const DerivedDistributions& derived,
                             const ProblemConstants& constants) {
  return 2.0 * constants.sup_loss * joint_product_tv(problem, derived);
}

double mutual_information_bound(const LearningProblem& problem,
                                const DerivedDistributions& derived,
                                const ProblemConstants& constants) {
  const double n = static_cast<double>(problem.sample_size());
  return constants.lipschitz * constants.diam *
         std::sqrt(derived.mi_w_sn.value / (2.0 * n));
}

double bl_cost_bound(const LearningProblem& problem,
                     const DerivedDistributions& derived,
                     const ProblemConstants& constants) {
  return constants.bl_norm * expected_bl_cost(problem, derived);
}

std::vector<BoundReport> corollary_bounds(const LearningProblem& problem,
                                          const DerivedDistributions& derived) {
  const ProblemConstants c = problem_constants_allow_infinite(problem);
  const double n = static_cast<double>(problem.sample_size());
  const double k_lip = c.lipschitz;
  const double f_sup = c.sup_loss;
  const double g_bl = c.bl_norm;
  const double diam = c.diam;

  const bool lip_ok = std::isfinite(k_lip);
  const bool g_ok = std::isfinite(g_bl);

  // Shared metric evaluations; the expensive conversions happen once.
  const double tv_val = joint_product_tv(problem, derived);
  const double hl_val = joint_product_hellinger(problem, derived);
  const double pr_val = (lip_ok || g_ok) ? expected_prokhorov(problem, derived) : 0.0;
  const double w1_val = g_ok ? algorithmic_transport_cost(problem, derived) : 0.0;
  const double mi_val = derived.mi_w_sn.value;
  const InfoValue chi2 = joint_product_chi_squared(derived.p_sn_w);
  const double log_chi2 = std::log1p(chi2.value);

  const AssumptionSet met{lip_ok, std::isfinite(f_sup), g_ok, std::isfinite(diam)};

  std::vector<BoundReport> out;
  const auto add = [&](std::string name, AssumptionSet required, double value) {
    BoundReport r;
    r.name = std::move(name);
    r.required = required;
    r.met = met;
    r.value = r.applicable() ? value : kInf;
    out.push_back(std::move(r));
  };

  const AssumptionSet lip_diam{true, false, false, true};
  const AssumptionSet bounded{false, true, false, false};
  const AssumptionSet bl{false, false, true, false};
  const AssumptionSet bl_diam{false, false, true, true};

  add("lipschitz_prokhorov", lip_diam, k_lip * (diam + 1.0) * pr_val);
  add("lipschitz_hellinger", lip_diam, k_lip * diam * hl_val);
  add("lipschitz_chi2", lip_diam, k_lip * diam * std::sqrt(log_chi2 / (2.0 * n)));
  add("bounded_mi", bounded, f_sup * std::sqrt(2.0 * mi_val / n));
  add("bounded_hellinger", bounded, 2.0 * f_sup * hl_val);
  add("bounded_chi2", bounded, f_sup * std::sqrt(2.0 * log_chi2 / n));
  add("bl_transport", bl, g_bl * w1_val);
  add("bl_tv", bl, 2.0 * g_bl * tv_val);
  add("bl_prokhorov", bl_diam, g_bl * (diam + 1.0) * pr_val);
  add("bl_mi", bl, 2.0 * g_bl * std::sqrt(2.0 * mi_val / n));
  add("bl_hellinger", bl, 2.0 * g_bl * hl_val);
  add("bl_chi2", bl, 2.0 * g_bl * std::sqrt(2.0 * log_chi2 / n));
  return out;
}

std::vector<BoundReport> corollary_bounds(const LearningProblem& problem,
                                          const AlgorithmKernel& kernel,
                                          std::size_t cap) {
  return corollary_bounds(problem, derive_distributions(problem, kernel, cap));
}

HypothesisClass::HypothesisClass(Matrix predictions) : predictions_(std::move(predictions)) {
  if (predictions_.rows() == 0 || predictions_.cols() == 0) {
    throw DimensionMismatch("hypothesis class must be nonempty");
  }
  for (std::size_t w = 0; w < predictions_.rows(); ++w) {
    for (std::size_t x = 0; x < predictions_.cols(); ++x) {
      const double v = predictions_(w, x);
      if (v != 0.0 && v != 1.0) {
        throw MetricViolation("hypothesis predictions must be 0 or 1");
      }
    }
  }
  // Collapse duplicate rows, first occurrence wins.
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> unique_rows;
  for (std::size_t w = 0; w < predictions_.rows(); ++w) {
    std::vector<double> row(predictions_.cols());
    for (std::size_t x = 0; x < predictions_.cols(); ++x) row[x] = predictions_(w, x);
    if (seen.insert(row).second) unique_rows.push_back(std::move(row));
  }
  if (unique_rows.size() != predictions_.rows()) {
    if (log_enabled()) {
      std::cerr << "genlab: warning: collapsed "
                << predictions_.rows() - unique_rows.size()
                << " duplicate hypotheses\n";
    }
    predictions_ = Matrix::from_rows(unique_rows);
  }
}

HypothesisClass HypothesisClass::thresholds(std::size_t points) {
  Matrix m(points + 1, points, 0.0);
  for (std::size_t k = 0; k <= points; ++k) {
    for (std::size_t x = k; x < points; ++x) m(k, x) = 1.0;
  }
  return HypothesisClass(std::move(m));
}

HypothesisClass HypothesisClass::intervals(std::size_t points) {
  std::vector<std::vector<double>> rows;
  rows.emplace_back(points, 0.0);  // empty interval
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = a; b < points; ++b) {
      std::vector<double> row(points, 0.0);
      for (std::size_t x = a; x <= b; ++x) row[x] = 1.0;
      rows.push_back(std::move(row));
    }
  }
  return HypothesisClass(Matrix::from_rows(rows));
}

HypothesisClass HypothesisClass::full(std::size_t points) {
  if (points > 20) throw SpaceTooLarge("full class limited to 20 points");
  const std::size_t count = std::size_t{1} << points;
  Matrix m(count, points, 0.0);
  for (std::size_t w = 0; w < count; ++w) {
    for (std::size_t x = 0; x < points; ++x) m(w, x) = (w >> x) & 1u ? 1.0 : 0.0;
  }
  return HypothesisClass(std::move(m));
}

namespace {

long long patterns_on(const HypothesisClass& cls, const std::vector<int>& points) {
  std::set<std::uint64_t> patterns;
  for (std::size_t w = 0; w < cls.num_hypotheses(); ++w) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      mask |= static_cast<std::uint64_t>(
                  cls.predict(w, static_cast<std::size_t>(points[i])))
              << i;
    }
    patterns.insert(mask);
  }
  return static_cast<long long>(patterns.size());
}

// Visits every size-k combination of {0, ..., m-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int m, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

}  // namespace

long long growth_function(const HypothesisClass& cls, int n) {
  if (n < 1) throw UsageError("growth_function requires n >= 1");
  const int m = static_cast<int>(cls.num_points());
  if (n >= m) {
    // Any tuple covering every point realizes the most patterns, and
    // repetitions never add new ones: count distinct full rows.
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    return patterns_on(cls, all);
  }
  long long best = 0;
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    best = std::max(best, patterns_on(cls, idx));
  });
  return best;
}

int vc_dimension(const HypothesisClass& cls, int enumeration_cap) {
  const int m = static_cast<int>(cls.num_points());
  if (m > enumeration_cap) {
    throw SpaceTooLarge("vc_dimension enumeration supports at most " +
                        std::to_string(enumeration_cap) + " points");
  }
  int vc = 0;
  for (int d = 1; d <= m; ++d) {
    bool shattered = false;
    const long long want = 1ll << d;
    for_each_combination(m, d, [&](const std::vector<int>& idx) {
      if (!shattered && patterns_on(cls, idx) == want) shattered = true;
    });
    if (!shattered) break;  // shattering is hereditary downward
    vc = d;
  }
  return vc;
}

double sauer_bound(int d, long long n) {
  if (d < 1 || n < 1) throw UsageError("sauer_bound requires d >= 1 and n >= 1");
  if (n < d) return std::pow(2.0, static_cast<double>(n));
  const double e = std::exp(1.0);
  return std::pow(e * static_cast<double>(n) / static_cast<double>(d),
                  static_cast<double>(d));
}

double vc_bound(int d, long long n) {
  if (d < 1 || n < 1) throw UsageError("vc_bound requires d >= 1 and n >= 1");
  const double e = std::exp(1.0);
  const double log_plus =
      std::max(1.0, std::log(static_cast<double>(n) * e / static_cast<double>(d)));
  return std::sqrt(2.0 * static_cast<double>(d) * log_plus / static_cast<double>(n));
}

LearningProblem classification_problem(const HypothesisClass& cls,
                                       const Distribution& data_dist, int n) {
  const std::size_t points = cls.num_points();
  const std::size_t hyps = cls.num_hypotheses();

  std::vector<std::string> instances;
  instances.reserve(points * 2);
  for (std::size_t x = 0; x < points; ++x) {
    instances.push_back("x" + std::to_string(x) + ":0");
    instances.push_back("x" + std::to_string(x) + ":1");
  }

  std::vector<std::string> labels;
  labels.reserve(hyps);
  Matrix dist(hyps, hyps, 0.0);
  for (std::size_t w = 0; w < hyps; ++w) {
    labels.push_back("h" + std::to_string(w));
    for (std::size_t v = 0; v < hyps; ++v) {
      if (w != v) dist(w, v) = 1.0;
    }
  }

  Matrix loss(hyps, points * 2, 0.0);
  for (std::size_t w = 0; w < hyps; ++w) {
    for (std::size_t x = 0; x < points; ++x) {
      loss(w, 2 * x) = cls.predict(w, x) == 0 ? 0.0 : 1.0;
      loss(w, 2 * x + 1) = cls.predict(w, x) == 1 ? 0.0 : 1.0;
    }
  }
  return LearningProblem(std::move(instances),
                         FiniteMetricSpace(std::move(labels), std::move(dist)),
                         std::move(loss), data_dist, n);
}

LearningProblem uniform_classification_problem(const HypothesisClass& cls, int n) {
  return classification_problem(cls, Distribution::uniform(cls.num_points() * 2), n);
}

std::vector<BoundReport> evaluate_all(const LearningProblem& problem,
                                      const AlgorithmKernel& kernel,
                                      const EvaluateOptions& opts) {
  const DerivedDistributions derived = derive_distributions(problem, kernel, opts.cap);
  const ProblemConstants constants = problem_constants_allow_infinite(problem);
  const double gen = expected_generalization_error(problem, kernel, opts.cap);

  const bool lip_ok = std::isfinite(constants.lipschitz);
  const AssumptionSet met{lip_ok, std::isfinite(constants.sup_loss),
                          std::isfinite(constants.bl_norm),
                          std::isfinite(constants.diam)};

  std::vector<BoundReport> reports;
  const auto add = [&](std::string name, AssumptionSet required, auto&& formula) {
    BoundReport r;
    r.name = std::move(name);
    r.required = required;
    r.met = met;
    r.value = r.applicable() ? formula() : kInf;
    reports.push_back(std::move(r));
  };

  add("lipschitz_transport", AssumptionSet{true, false, false, false},
      [&] { return transport_cost_bound(problem, derived, constants); });
  add("lipschitz_tv_diam", AssumptionSet{true, false, false, true},
      [&] { return tv_diameter_bound(problem, derived, constants); });
  add("lipschitz_mi_diam", AssumptionSet{true, false, false, true},
      [&] { return mutual_information_bound(problem, derived, constants); });
  add("bounded_tv", AssumptionSet{false, true, false, false},
      [&] { return bounded_loss_tv_bound(problem, derived, constants); });
  add("bl_cost", AssumptionSet{false, false, true, false},
      [&] { return bl_cost_bound(problem, derived, constants); });

  for (BoundReport& r : corollary_bounds(problem, derived)) {
    reports.push_back(std::move(r));
  }

  if (opts.vc_class.has_value()) {
    // The VC bound normalizes F = 1, so it applies only to 0-1 losses, and
    // only to algorithms that are a function of the empirical risk vector;
    // of the shipped kernels that is ERM. Both conditions fold into the
    // "bounded" flag of this one report.
    bool zero_one = true;
    for (std::size_t w = 0; w < problem.num_hypotheses() && zero_one; ++w) {
      for (std::size_t z = 0; z < problem.num_instances(); ++z) {
        const double l = problem.loss(w, z);
        if (l != 0.0 && l != 1.0) {
          zero_one = false;
          break;
        }
      }
    }
    BoundReport r;
    r.name = "vc";
    r.required = AssumptionSet{false, true, false, false};
    r.met = met;
    r.met.bounded = met.bounded && zero_one && kernel.name() == "erm";
    r.value = r.applicable()
                  ? vc_bound(vc_dimension(*opts.vc_class), problem.sample_size())
                  : kInf;
    reports.push_back(std::move(r));
  }

  for (BoundReport& r : reports) {
    r.true_gen_error = gen;
    r.valid = gen <= r.value + 1e-9;
  }
  std::sort(reports.begin(), reports.end(),
            [](const BoundReport& a, const BoundReport& b) { return a.name < b.name; });
  return reports;
}

}  // namespace genlab
