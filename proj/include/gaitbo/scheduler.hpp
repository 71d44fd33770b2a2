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

#ifndef GAITBO_SCHEDULER_HPP_
#define GAITBO_SCHEDULER_HPP_

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gaitbo/domain.hpp"

namespace gaitbo {

// Node coordinates along the three gait-parameter axes (vx, vy, h).
struct GridAxes {
  std::vector<double> vx;
  std::vector<double> vy;
  std::vector<double> h;

  const std::vector<double>& axis(int i) const { return i == 0 ? vx : (i == 1 ? vy : h); }
  std::size_t node_count() const { return vx.size() * vy.size() * h.size(); }
  bool operator==(const GridAxes&) const = default;
};

// Full lookup grid used by the hardware-scale schedule (11 x 7 x 4 nodes).
GridAxes full_grid();
// Reduced grid: vx {-0.4, 0, 0.4}, vy {0}, h {0.8, 1.0}.
GridAxes desk_grid();

// Gain-scheduling lookup table. Immutable value: every update returns a new
// table. Construction always fills every node, so a partially populated table
// cannot exist.
class GainTable {
 public:
  using Index = std::array<std::size_t, 3>;

  GainTable(GridAxes axes, const ControlParams& fill);
  // Entries in vx-major, then vy, then h order.
  GainTable(GridAxes axes, std::vector<ControlParams> entries);

  const GridAxes& axes() const { return axes_; }
  const std::vector<ControlParams>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::size_t flat(const Index& idx) const {
    return (idx[0] * axes_.vy.size() + idx[1]) * axes_.h.size() + idx[2];
  }
  Index unflat(std::size_t flat) const;
  GaitParameter node(const Index& idx) const {
    return {axes_.vx[idx[0]], axes_.vy[idx[1]], axes_.h[idx[2]]};
  }
  GaitParameter node(std::size_t flat_index) const { return node(unflat(flat_index)); }
  const ControlParams& at(const Index& idx) const { return entries_[flat(idx)]; }

  // Grid node within 1e-9 per axis of p, if any.
  std::optional<Index> find_node(const GaitParameter& p) const;

  // Trilinear interpolation of all nine parameters; queries outside the grid
  // are clamped onto it first. Exact at nodes.
  ControlParams lookup(const GaitParameter& pDesired) const;

  // Throws RangeError naming the nearest node when p is not a grid node.
  GainTable upsert(const GaitParameter& p, const ControlParams& params) const;

  GainTable apply_corrections(
      const std::vector<std::pair<GaitParameter, Correction>>& corrections) const;

  bool operator==(const GainTable& o) const {
    return axes_ == o.axes_ && entries_ == o.entries_;
  }

 private:
  Index require_node(const GaitParameter& p) const;

  GridAxes axes_;
  std::vector<ControlParams> entries_;
};

// Completes a table in which only `known` nodes carry meaningful values:
// unknown nodes are filled by linear interpolation along grid lines (clamped
// at line ends), sweeping vx, then vy, then h lines. Requires at least one
// known node.
GainTable fill_unvisited(const GainTable& table, const std::vector<bool>& known);

}  // namespace gaitbo

#endif  // GAITBO_SCHEDULER_HPP_
