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

#ifndef POMG_BELIEF_HPP_
#define POMG_BELIEF_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pomg/core.hpp"

namespace pomg {

// A composite point (state, private-history profile). The profile is stored
// stage-major: `width` entries per stage, one private increment per player.
// Private beliefs use the same layout with the owner's slot held fixed at its
// realized increments.
struct Point {
  int state = 0;
  std::vector<int> history;

  auto operator<=>(const Point&) const = default;
  bool operator==(const Point&) const = default;

  int stages(int width) const { return width == 0 ? 0 : static_cast<int>(history.size()) / width; }

  // Player `i`'s increments, oldest first.
  std::vector<int> own(int i, int width) const {
    std::vector<int> out;
    for (std::size_t k = static_cast<std::size_t>(i); k < history.size();
         k += static_cast<std::size_t>(width)) {
      out.push_back(history[k]);
    }
    return out;
  }
};

// Finite distribution over composite points, kept sorted and duplicate-free.
class Belief {
 public:
  using Entry = std::pair<Point, double>;

  Belief() = default;

  // Merges duplicate points; drops zero masses.
  static Belief from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Belief b;
    for (auto& e : entries) {
      if (!b.entries_.empty() && b.entries_.back().first == e.first) {
        b.entries_.back().second += e.second;
      } else {
        b.entries_.push_back(std::move(e));
      }
    }
    std::erase_if(b.entries_, [](const Entry& e) { return e.second == 0.0; });
    return b;
  }

  static Belief from_map(std::map<Point, double> m) {
    Belief b;
    b.entries_.reserve(m.size());
    for (auto& [p, w] : m) {
      if (w != 0.0) b.entries_.emplace_back(p, w);
    }
    return b;
  }

  // Distribution over states paired with empty private histories.
  static Belief over_states(std::span<const double> probs) {
    Belief b;
    for (std::size_t s = 0; s < probs.size(); ++s) {
      if (probs[s] > 0.0) b.entries_.push_back({Point{static_cast<int>(s), {}}, probs[s]});
    }
    return b;
  }

  static Belief point_mass(Point p) {
    Belief b;
    b.entries_.push_back({std::move(p), 1.0});
    return b;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  double total_mass() const {
    double t = 0.0;
    for (const auto& e : entries_) t += e.second;
    return t;
  }

  bool is_normalized(double tol = kBeliefTol) const {
    for (const auto& e : entries_) {
      if (!(e.second >= 0.0)) return false;
    }
    return std::abs(total_mass() - 1.0) <= tol;
  }

  double mass(const Point& p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, const Point& q) { return e.first < q; });
    return (it != entries_.end() && it->first == p) ? it->second : 0.0;
  }

  // Returns the normalizer; throws ZeroLikelihood when it is zero.
  double normalize(int step = -1) {
    double t = total_mass();
    if (!(t > 0.0)) throw ZeroLikelihood(step);
    for (auto& e : entries_) e.second /= t;
    return t;
  }

  std::vector<double> state_marginal(int num_states) const {
    std::vector<double> out(static_cast<std::size_t>(num_states), 0.0);
    for (const auto& e : entries_) out[static_cast<std::size_t>(e.first.state)] += e.second;
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

// Half L1 distance over the union support; points missing from one side have
// mass zero there.
inline double tv_distance(const Belief& p, const Belief& q) {
  double acc = 0.0;
  auto a = p.begin(), ae = p.end();
  auto b = q.begin(), be = q.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      acc += std::abs(a->second);
      ++a;
    } else if (a == ae || b->first < a->first) {
      acc += std::abs(b->second);
      ++b;
    } else {
      acc += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return std::clamp(0.5 * acc, 0.0, 1.0);
}

// Total variation between two dense probability vectors.
inline double tv_distance(std::span<const double> p, std::span<const double> q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i) {
    double x = i < p.size() ? p[i] : 0.0;
    double y = i < q.size() ? q[i] : 0.0;
    acc += std::abs(x - y);
  }
  return 0.5 * acc;
}

// Image measure of `b` under a point map; masses sharing an image are summed.
template <class Map>
Belief pushforward(const Belief& b, Map&& map) {
  std::vector<Belief::Entry> out;
  out.reserve(b.size());
  for (const auto& [p, w] : b) out.emplace_back(map(p), w);
  return Belief::from_entries(std::move(out));
}

// Keeps only the last `stages` stages of every private history.
inline Belief truncate_histories(const Belief& b, int stages, int width) {
  const std::size_t keep = static_cast<std::size_t>(stages) * static_cast<std::size_t>(width);
  return pushforward(b, [keep](const Point& p) {
    if (p.history.size() <= keep) return p;
    return Point{p.state, std::vector<int>(p.history.end() - static_cast<std::ptrdiff_t>(keep),
                                           p.history.end())};
  });
}

}  // namespace pomg

#endif  // POMG_BELIEF_HPP_
