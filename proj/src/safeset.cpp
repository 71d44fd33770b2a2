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

#include "gaitbo/safeset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include <Eigen/Geometry>

#include "gaitbo/errors.hpp"
#include "parallel.hpp"

namespace gaitbo {

std::vector<double> SweepAxis::values() const {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("sweep axis needs step > 0 and hi >= lo");
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] = std::round((lo + step * static_cast<double>(i)) * 1e12) / 1e12;
  }
  return v;
}

std::vector<GaitParameter> SweepGridSpec::commands() const {
  std::vector<GaitParameter> out;
  for (double x : vx.values()) {
    for (double y : vy.values()) {
      for (double z : h.values()) out.push_back(GaitParameter::checked(x, y, z));
    }
  }
  return out;
}

SweepGridSpec default_sweep_grid() { return {}; }

SweepResult sweep_commands(const GainTable& table, const PlantConfig& cfg,
                           const std::vector<GaitParameter>& grid, const SeedSpec& seed,
                           double segmentDuration, int jobs) {
  if (grid.empty()) throw RangeError("sweep_commands: empty command grid");
  std::vector<Trajectory> runs(grid.size());
  internal::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const GaitParameter& cmd = grid[i];
    const CommandProfile profile = evaluation_profile(cmd);
    runs[i] = run_episode(cfg, table, profile, PlantState::at_rest(profile.at(0.0)),
                          seed.child(i));
  });

  SweepResult result;
  result.grid = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (runs[i].fell) continue;
    const ConvergedStats s = converged_stats(runs[i], segmentDuration);
    result.feasibleCommands.push_back(grid[i]);
    result.safePoints.push_back(s.pC);
    result.stats.push_back(s);
  }
  return result;
}

SafePolyhedron::SafePolyhedron(std::vector<Eigen::Vector3d> vertices, std::vector<PolyFace> faces,
                               double gamma)
    : vertices_(std::move(vertices)), faces_(std::move(faces)), gamma_(gamma) {
  validate();
}

Eigen::Vector3d SafePolyhedron::centroid() const {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

void SafePolyhedron::validate() const {
  if (vertices_.size() < 4 || faces_.size() < 4) {
    throw SafeSetError("safe polyhedron needs at least 4 vertices and 4 faces");
  }
  if (!(gamma_ > 0.0 && gamma_ <= 1.0)) throw SafeSetError("shrink factor must lie in (0, 1]");
  const int nv = static_cast<int>(vertices_.size());
  const Eigen::Vector3d c = centroid();
  for (const auto& f : faces_) {
    for (int i : f.v) {
      if (i < 0 || i >= nv) throw SafeSetError("face references a missing vertex");
    }
    if (f.anchor < 0 || f.anchor >= nv) throw SafeSetError("face anchor is not a vertex");
    if (std::abs(f.normal.norm() - 1.0) > 1e-9) throw SafeSetError("face normal is not unit length");
    if (!((c - vertices_[static_cast<std::size_t>(f.anchor)]).dot(f.normal) > 0.0)) {
      throw SafeSetError("face normal does not point toward the centroid");
    }
  }
  for (const auto& v : vertices_) {
    if (constraint_value(*this, v) > 1e-9) throw SafeSetError("a vertex lies outside a face plane");
  }
  if (!(constraint_value(*this, c) < 0.0)) throw SafeSetError("centroid is not strictly interior");
}

namespace {

struct HullFace {
  std::array<int, 3> v;
  Eigen::Vector3d n;  // outward unit normal
  bool alive = true;
};

double point_line_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                           const Eigen::Vector3d& b) {
  return (p - a).cross(b - a).norm() / (b - a).norm();
}

}  // namespace

SafePolyhedron convex_hull(const std::vector<Eigen::Vector3d>& points, double gamma) {
  if (points.size() < 4) throw SafeSetError("convex hull needs at least 4 points");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw SafeSetError("shrink factor must lie in (0, 1]");
  for (const auto& p : points) {
    if (!p.allFinite()) throw SafeSetError("convex hull input has a non-finite point");
  }
  Eigen::Vector3d lo = points.front();
  Eigen::Vector3d hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double scale = (hi - lo).norm();
  const double degenerate_tol = 1e-9 * std::max(scale, 1e-300);
  const double eps = 1e-11 * std::max(scale, 1.0);

  // Initial tetrahedron from well-separated extreme points.
  const int n = static_cast<int>(points.size());
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (points[i][0] < points[i0][0]) i0 = i;
  }
  int i1 = i0;
  for (int i = 0; i < n; ++i) {
    if ((points[i] - points[i0]).norm() > (points[i1] - points[i0]).norm()) i1 = i;
  }
  if ((points[i1] - points[i0]).norm() <= degenerate_tol) {
    throw SafeSetError("convex hull input is degenerate: all points coincide");
  }
  int i2 = -1;
  double best = degenerate_tol;
  for (int i = 0; i < n; ++i) {
    const double d = point_line_distance(points[i], points[i0], points[i1]);
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0) throw SafeSetError("convex hull input is degenerate: points are collinear");
  const Eigen::Vector3d plane_n =
      (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
  int i3 = -1;
  best = degenerate_tol;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs((points[i] - points[i0]).dot(plane_n));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (i3 < 0) throw SafeSetError("convex hull input is degenerate: points are coplanar");

  const Eigen::Vector3d interior = (points[i0] + points[i1] + points[i2] + points[i3]) / 4.0;
  std::vector<HullFace> faces;
  auto add_face = [&](int a, int b, int c) {
    Eigen::Vector3d nrm = (points[b] - points[a]).cross(points[c] - points[a]);
    const double len = nrm.norm();
    if (!(len > 0.0)) throw NumericalError("convex hull produced a zero-area face");
    nrm /= len;
    if (nrm.dot(interior - points[a]) > 0.0) {
      std::swap(b, c);
      nrm = -nrm;
    }
    faces.push_back({{a, b, c}, nrm, true});
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].alive &&
          faces[f].n.dot(points[p] - points[faces[f].v[0]]) > eps) {
        visible.push_back(f);
      }
    }
    if (visible.empty()) continue;
    std::set<std::pair<int, int>> edges;
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int k = 0; k < 3; ++k) edges.insert({v[k], v[(k + 1) % 3]});
      faces[f].alive = false;
    }
    for (const auto& [a, b] : edges) {
      if (edges.count({b, a}) == 0) add_face(a, b, p);
    }
  }

  // Re-index the surviving vertices in input order.
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  for (const auto& f : faces) {
    if (!f.alive) continue;
    for (int v : f.v) remap[static_cast<std::size_t>(v)] = 0;
  }
  std::vector<Eigen::Vector3d> vertices;
  for (int i = 0; i < n; ++i) {
    if (remap[static_cast<std::size_t>(i)] == 0) {
      remap[static_cast<std::size_t>(i)] = static_cast<int>(vertices.size());
      vertices.push_back(points[static_cast<std::size_t>(i)]);
    }
  }
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& v : vertices) centroid += v;
  centroid /= static_cast<double>(vertices.size());
  for (auto& v : vertices) v = centroid + gamma * (v - centroid);

  std::vector<PolyFace> out;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    PolyFace pf;
    for (int k = 0; k < 3; ++k) pf.v[k] = remap[static_cast<std::size_t>(f.v[k])];
    pf.normal = -f.n;
    pf.anchor = pf.v[0];
    out.push_back(pf);
  }
  return SafePolyhedron(std::move(vertices), std::move(out), gamma);
}

double constraint_value(const SafePolyhedron& poly, const Eigen::Vector3d& pC) {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& f : poly.faces()) {
    h = std::max(h, (poly.vertices()[static_cast<std::size_t>(f.anchor)] - pC).dot(f.normal));
  }
  return h;
}

double constraint_value(const SafePolyhedron& poly, const GaitParameter& pC) {
  return constraint_value(poly, pC.vec());
}

bool contains(const SafePolyhedron& poly, const GaitParameter& pC) {
  return constraint_value(poly, pC) <= 0.0;
}

}  // namespace gaitbo
