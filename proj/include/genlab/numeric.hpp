#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "genlab/errors.hpp"

namespace genlab {

// Compensated (Neumaier) summation. Accumulation order is always
// ascending-index at call sites so results are bit-reproducible.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(const std::vector<double>& xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// Dense row-major matrix; just enough for probability tables and LP tableaus.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) {
        throw DimensionMismatch("ragged matrix: row " + std::to_string(i) +
                                " has " + std::to_string(rows[i].size()) +
                                " entries, expected " + std::to_string(m.cols_));
      }
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Prints with 12 significant digits; the output-format contract for the CLI.
inline std::string format_value(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::string(buf);
}

// SplitMix64: tiny, portable, deterministic across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  // Positive draw with unit mean; used for normalized full-support vectors.
  double exp1() {
    double u = u01();
    while (u <= 0.0) u = u01();
    return -std::log(u);
  }

 private:
  std::uint64_t state_;
};

// Counter-based stream split: one master seed, one independent stream per
// trial index. No global RNG state anywhere.
inline SplitMix64 trial_stream(std::uint64_t master_seed, std::uint64_t trial) {
  SplitMix64 mixer(master_seed ^ (0xd1b54a32d192ed03ULL * (trial + 1)));
  mixer.next();
  mixer.next();
  return mixer;
}

}  // namespace genlab
