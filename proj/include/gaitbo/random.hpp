// Copyright 2026 The gaitbo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAITBO_RANDOM_HPP_
#define GAITBO_RANDOM_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "gaitbo/domain.hpp"

namespace gaitbo {

// Keyed pseudo-random stream over std::mt19937_64 seeded from (seed, stream)
// through std::seed_seq. Both are fully specified by the standard; the
// uniform and normal transforms are written out here because the standard
// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(const SeedSpec& spec);

  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform(double lo, double hi);
  double normal();                     // standard normal
  Eigen::VectorXd uniform_vector(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Finalizer of splitmix64; used to derive child streams.
std::uint64_t mix64(std::uint64_t x);

}  // namespace gaitbo

#endif  // GAITBO_RANDOM_HPP_
