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

#include "gaitbo/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaitbo/errors.hpp"

namespace gaitbo {
namespace {

constexpr double kNodeTolerance = 1e-9;

std::vector<double> arange(double lo, double step, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    // Round away representation noise so nodes print as typed.
    v[i] = std::round((lo + step * i) * 1e12) / 1e12;
  }
  return v;
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ConfigError(std::string("grid axis ") + name + " has no nodes");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw ConfigError(std::string("grid axis ") + name + " is not finite");
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw ConfigError(std::string("grid axis ") + name + " must be strictly increasing");
    }
  }
}

// Cell index and interpolation weight of q along one axis, with clamping.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double q) {
  if (axis.size() == 1) return {0, 0.0};
  if (q <= axis.front()) return {0, 0.0};
  if (q >= axis.back()) return {axis.size() - 2, 1.0};
  auto it = std::upper_bound(axis.begin(), axis.end(), q);
  const std::size_t i = static_cast<std::size_t>(it - axis.begin()) - 1;
  return {i, (q - axis[i]) / (axis[i + 1] - axis[i])};
}

std::size_t nearest(const std::vector<double>& axis, double q) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs(axis[i] - q) < std::abs(axis[best] - q)) best = i;
  }
  return best;
}

}  // namespace

GridAxes full_grid() {
  return {arange(-1.0, 0.2, 11), arange(-0.3, 0.1, 7), arange(0.7, 0.1, 4)};
}

GridAxes desk_grid() { return {{-0.4, 0.0, 0.4}, {0.0}, {0.8, 1.0}}; }

GainTable::GainTable(GridAxes axes, const ControlParams& fill)
    : GainTable(axes, std::vector<ControlParams>(axes.node_count(), fill)) {}

GainTable::GainTable(GridAxes axes, std::vector<ControlParams> entries)
    : axes_(std::move(axes)), entries_(std::move(entries)) {
  check_axis(axes_.vx, "vx");
  check_axis(axes_.vy, "vy");
  check_axis(axes_.h, "h");
  if (entries_.size() != axes_.node_count()) {
    throw ConfigError("gain table has " + std::to_string(entries_.size()) +
                      " entries, grid needs " + std::to_string(axes_.node_count()));
  }
  for (const auto& e : entries_) e.validate();
}

GainTable::Index GainTable::unflat(std::size_t f) const {
  const std::size_t nh = axes_.h.size();
  const std::size_t nvy = axes_.vy.size();
  return {f / (nvy * nh), (f / nh) % nvy, f % nh};
}

std::optional<GainTable::Index> GainTable::find_node(const GaitParameter& p) const {
  Index idx{};
  for (int a = 0; a < 3; ++a) {
    const auto& axis = axes_.axis(a);
    const std::size_t i = nearest(axis, p[a]);
    if (std::abs(axis[i] - p[a]) > kNodeTolerance) return std::nullopt;
    idx[a] = i;
  }
  return idx;
}

GainTable::Index GainTable::require_node(const GaitParameter& p) const {
  if (auto idx = find_node(p)) return *idx;
  const Index near{nearest(axes_.vx, p.vx), nearest(axes_.vy, p.vy), nearest(axes_.h, p.h)};
  throw RangeError("gait parameter " + to_string(p) + " is not a grid node; nearest node is " +
                   to_string(node(near)));
}

ControlParams GainTable::lookup(const GaitParameter& q) const {
  const auto [i0, t0] = locate(axes_.vx, q.vx);
  const auto [i1, t1] = locate(axes_.vy, q.vy);
  const auto [i2, t2] = locate(axes_.h, q.h);
  const std::size_t n0 = axes_.vx.size() > 1 ? 2 : 1;
  const std::size_t n1 = axes_.vy.size() > 1 ? 2 : 1;
  const std::size_t n2 = axes_.h.size() > 1 ? 2 : 1;

  ControlParams out;
  for (std::size_t a = 0; a < n0; ++a) {
    const double wa = a == 0 ? 1.0 - t0 : t0;
    for (std::size_t b = 0; b < n1; ++b) {
      const double wb = b == 0 ? 1.0 - t1 : t1;
      for (std::size_t c = 0; c < n2; ++c) {
        const double wc = c == 0 ? 1.0 - t2 : t2;
        const double w = wa * wb * wc;
        const ControlParams& e = at({i0 + a, i1 + b, i2 + c});
        out.kP += w * e.kP;
        out.kD += w * e.kD;
        out.deltaP += w * e.deltaP;
      }
    }
  }
  return out;
}

GainTable GainTable::upsert(const GaitParameter& p, const ControlParams& params) const {
  params.validate();
  const Index idx = require_node(p);
  GainTable out = *this;
  out.entries_[flat(idx)] = params;
  return out;
}

GainTable GainTable::apply_corrections(
    const std::vector<std::pair<GaitParameter, Correction>>& corrections) const {
  GainTable out = *this;
  for (const auto& [p, corr] : corrections) {
    const std::size_t f = flat(require_node(p));
    out.entries_[f] = corr.apply(out.entries_[f]);
  }
  return out;
}

GainTable fill_unvisited(const GainTable& table, const std::vector<bool>& known_in) {
  if (known_in.size() != table.size()) throw RangeError("fill_unvisited: mask size mismatch");
  if (std::none_of(known_in.begin(), known_in.end(), [](bool b) { return b; })) {
    throw RangeError("fill_unvisited: no visited node to interpolate from");
  }
  std::vector<ControlParams> entries = table.entries();
  std::vector<bool> known = known_in;
  const GridAxes& ax = table.axes();
  const std::array<std::size_t, 3> dims{ax.vx.size(), ax.vy.size(), ax.h.size()};

  for (int axis = 0; axis < 3; ++axis) {
    const int o1 = (axis + 1) % 3;
    const int o2 = (axis + 2) % 3;
    const auto& coords = ax.axis(axis);
    for (std::size_t j = 0; j < dims[o1]; ++j) {
      for (std::size_t k = 0; k < dims[o2]; ++k) {
        auto flat_at = [&](std::size_t i) {
          GainTable::Index idx{};
          idx[axis] = i;
          idx[o1] = j;
          idx[o2] = k;
          return table.flat(idx);
        };
        std::vector<std::size_t> line_known;
        for (std::size_t i = 0; i < dims[axis]; ++i) {
          if (known[flat_at(i)]) line_known.push_back(i);
        }
        if (line_known.empty()) continue;
        for (std::size_t i = 0; i < dims[axis]; ++i) {
          const std::size_t f = flat_at(i);
          if (known[f]) continue;
          auto hi = std::upper_bound(line_known.begin(), line_known.end(), i);
          if (hi == line_known.begin()) {
            entries[f] = entries[flat_at(line_known.front())];
          } else if (hi == line_known.end()) {
            entries[f] = entries[flat_at(line_known.back())];
          } else {
            const std::size_t a = *(hi - 1);
            const std::size_t b = *hi;
            const double t = (coords[i] - coords[a]) / (coords[b] - coords[a]);
            const ControlParams& ea = entries[flat_at(a)];
            const ControlParams& eb = entries[flat_at(b)];
            ControlParams c;
            c.kP = (1.0 - t) * ea.kP + t * eb.kP;
            c.kD = (1.0 - t) * ea.kD + t * eb.kD;
            c.deltaP = (1.0 - t) * ea.deltaP + t * eb.deltaP;
            entries[f] = c;
          }
        }
        for (std::size_t i = 0; i < dims[axis]; ++i) known[flat_at(i)] = true;
      }
    }
  }
  return GainTable(ax, std::move(entries));
}

}  // namespace gaitbo
