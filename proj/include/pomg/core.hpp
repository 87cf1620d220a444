// Copyright 2026 The pomg-trunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POMG_CORE_HPP_
#define POMG_CORE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pomg {

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An increment (or increment sequence) has probability zero under the belief
// it was conditioned on. `step` is the index inside a composed window, or -1
// for a single step.
class ZeroLikelihood : public Error {
 public:
  explicit ZeroLikelihood(int step = -1)
      : Error(step < 0 ? "increment has zero likelihood under the belief"
                       : "increment at window step " + std::to_string(step) +
                             " has zero likelihood under the belief"),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

class InfeasibleEnumeration : public Error {
 public:
  using Error::Error;
};

class SizeOverflow : public Error {
 public:
  using Error::Error;
};

class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

class NotZeroSum : public Error {
 public:
  using Error::Error;
};

class NotCertified : public Error {
 public:
  using Error::Error;
};

class UnknownWindow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Tolerances -----------------------------------------------------------------

inline constexpr double kKernelTol = 1e-12;
inline constexpr double kBeliefTol = 1e-10;
inline constexpr double kIdentityTol = 1e-12;

// Budgets --------------------------------------------------------------------

// Enumeration limits. Defaults can be overridden through the environment
// variables POMG_NODE_BUDGET, POMG_PRESCRIPTION_BUDGET and POMG_SIZE_BUDGET.
struct Budgets {
  std::size_t nodes = 4'000'000;
  std::size_t prescriptions = 65'536;
  std::size_t sizes = 4'096;
  std::size_t kernel_entries = 20'000'000;

  static Budgets from_env() {
    Budgets b;
    auto read = [](const char* name, std::size_t& slot) {
      if (const char* v = std::getenv(name); v != nullptr && *v != '\0') {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end != v && parsed > 0) slot = static_cast<std::size_t>(parsed);
      }
    };
    read("POMG_NODE_BUDGET", b.nodes);
    read("POMG_PRESCRIPTION_BUDGET", b.prescriptions);
    read("POMG_SIZE_BUDGET", b.sizes);
    return b;
  }
};

// Counts enumeration nodes against a budget.
class NodeCounter {
 public:
  NodeCounter(std::size_t budget, std::string what)
      : budget_(budget), what_(std::move(what)) {}
  void tick() {
    if (++count_ > budget_) {
      throw InfeasibleEnumeration(what_ + " exceeds node budget of " +
                                  std::to_string(budget_));
    }
  }
  std::size_t count() const { return count_; }

 private:
  std::size_t budget_;
  std::size_t count_ = 0;
  std::string what_;
};

// Mixed-radix indexing -------------------------------------------------------

// Flattens per-player coordinates row-major in player order: player 0 is the
// most significant digit.
class JointIndexer {
 public:
  JointIndexer() = default;
  explicit JointIndexer(std::vector<int> radices) : radices_(std::move(radices)) {
    size_ = 1;
    for (int r : radices_) size_ *= static_cast<std::size_t>(r);
  }

  std::size_t size() const { return size_; }
  int num_components() const { return static_cast<int>(radices_.size()); }
  int radix(int i) const { return radices_[i]; }
  const std::vector<int>& radices() const { return radices_; }

  std::size_t flatten(std::span<const int> coords) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < radices_.size(); ++i) {
      idx = idx * static_cast<std::size_t>(radices_[i]) +
            static_cast<std::size_t>(coords[i]);
    }
    return idx;
  }

  void unflatten(std::size_t idx, std::span<int> coords) const {
    for (std::size_t i = radices_.size(); i-- > 0;) {
      coords[i] = static_cast<int>(idx % static_cast<std::size_t>(radices_[i]));
      idx /= static_cast<std::size_t>(radices_[i]);
    }
  }

  std::vector<int> unflatten(std::size_t idx) const {
    std::vector<int> c(radices_.size());
    unflatten(idx, c);
    return c;
  }

  int component(std::size_t idx, int i) const {
    for (std::size_t j = radices_.size(); j-- > static_cast<std::size_t>(i) + 1;) {
      idx /= static_cast<std::size_t>(radices_[j]);
    }
    return static_cast<int>(idx % static_cast<std::size_t>(radices_[i]));
  }

 private:
  std::vector<int> radices_;
  std::size_t size_ = 1;
};

// Checked product of sizes; throws SizeOverflow above `limit`.
inline std::size_t checked_product(std::span<const int> sizes, std::size_t limit,
                                   const std::string& what) {
  std::size_t p = 1;
  for (int s : sizes) {
    if (s <= 0) throw SizeOverflow(what + ": nonpositive size");
    if (p > limit / static_cast<std::size_t>(s)) {
      throw SizeOverflow(what + " exceeds budget of " + std::to_string(limit));
    }
    p *= static_cast<std::size_t>(s);
  }
  if (p > limit) throw SizeOverflow(what + " exceeds budget of " + std::to_string(limit));
  return p;
}

// base^exponent with overflow detection against `limit`.
inline std::size_t checked_power(std::size_t base, std::size_t exponent,
                                 std::size_t limit, const std::string& what) {
  std::size_t p = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (base != 0 && p > limit / base) {
      throw SizeOverflow(what + " exceeds budget of " + std::to_string(limit));
    }
    p *= base;
  }
  if (p > limit) throw SizeOverflow(what + " exceeds budget of " + std::to_string(limit));
  return p;
}

// Randomness -----------------------------------------------------------------
//
// All randomness derives from one 64-bit seed split by (purpose tag, index).

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(tag)) + index);
}

// Small deterministic generator; identical streams across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  // Index sampled from an unnormalized weight vector.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    int last_positive = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      last_positive = static_cast<int>(i);
      if (u < weights[i]) return static_cast<int>(i);
      u -= weights[i];
    }
    return last_positive;
  }

  // Random point of the simplex (flat Dirichlet).
  std::vector<double> simplex(int n) {
    std::vector<double> v(n);
    double total = 0.0;
    for (double& x : v) {
      x = -std::log(1.0 - uniform());
      total += x;
    }
    for (double& x : v) x /= total;
    return v;
  }

 private:
  std::uint64_t state_;
};

// Purpose tags for derive_seed.
enum class SeedTag : std::uint64_t {
  kPredictors = 1,
  kIndependence = 2,
  kMonteCarlo = 3,
  kProfiles = 4,
  kModels = 5,
};

inline std::uint64_t derive_seed(std::uint64_t seed, SeedTag tag, std::uint64_t index) {
  return derive_seed(seed, static_cast<std::uint64_t>(tag), index);
}

// Misc -----------------------------------------------------------------------

inline double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace pomg

#endif  // POMG_CORE_HPP_
