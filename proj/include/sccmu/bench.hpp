/*
 * Copyright 2026 The sccmu authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "graph.hpp"

namespace sccmu {

// ---------------------------------------------------------------------------
// Model-checking benchmark
//
// Times accepts(automaton, instance) on a growing family of graphs with
// the automaton held fixed, and fits a log-log slope over the instance
// sizes. Warm-up run discarded, median of five samples per size; a BFS
// reachability pass over the same instances gives a linear-time anchor.

enum class BenchFamily { Gk, Chain };

struct BenchPoint {
  int parameter = 0;     // k for the gk family, length for chains
  int vertex_count = 0;
  double accept_seconds = 0.0;
  double baseline_seconds = 0.0;
  bool accepted = false;
};

struct BenchReport {
  std::string family;
  std::vector<BenchPoint> points;  // strictly increasing vertex counts
  double accept_slope = 0.0;       // fitted on (log vertices, log seconds)
  double baseline_slope = 0.0;
  std::string machine;
};

/// A stretched chain instance: reflexive F endpoints joined by N vertices.
inline ColoredGraph make_chain_graph(int length) {
  if (length < 2) throw std::invalid_argument("make_chain_graph: need at least 2 vertices");
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<SatPair> sat;
  for (int v = 0; v < length; ++v) {
    vertices.push_back(v);
    if (v + 1 < length) edges.emplace_back(v, v + 1);
  }
  edges.emplace_back(0, 0);
  edges.emplace_back(length - 1, length - 1);
  sat.emplace_back("F", 0);
  sat.emplace_back("F", length - 1);
  return ColoredGraph({"F"}, std::move(vertices), std::move(edges), std::move(sat), 0);
}

namespace detail {

template <typename F>
double median_seconds(F&& body, int repeats = 5) {
  body();  // warm-up, discarded
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

inline double fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline int bfs_reachable_count(const ColoredGraph& g) {
  return static_cast<int>(reachable_from(g, g.point()).size());
}

}  // namespace detail

inline BenchReport bench_modelcheck(const ParityAutomaton& automaton, BenchFamily family,
                                    const std::vector<int>& sizes) {
  if (sizes.size() < 5)
    throw std::invalid_argument("bench_modelcheck: need at least 5 size points");
  for (size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("bench_modelcheck: sizes must be strictly increasing");
  BenchReport report;
  report.family = family == BenchFamily::Gk ? "gk" : "chain";
  volatile int sink = 0;
  for (int size : sizes) {
    ColoredGraph g = family == BenchFamily::Gk ? make_gk(size) : make_chain_graph(size);
    BenchPoint point;
    point.parameter = size;
    point.vertex_count = g.num_vertices();
    bool verdict = false;
    point.accept_seconds = detail::median_seconds([&] { verdict = accepts(automaton, g); });
    point.accepted = verdict;
    point.baseline_seconds =
        detail::median_seconds([&] { sink = sink + detail::bfs_reachable_count(g); });
    report.points.push_back(point);
  }
  std::vector<std::pair<double, double>> accept_pts, base_pts;
  for (const auto& p : report.points) {
    accept_pts.emplace_back(static_cast<double>(p.vertex_count),
                            std::max(p.accept_seconds, 1e-9));
    base_pts.emplace_back(static_cast<double>(p.vertex_count),
                          std::max(p.baseline_seconds, 1e-9));
  }
  report.accept_slope = detail::fit_loglog_slope(accept_pts);
  report.baseline_slope = detail::fit_loglog_slope(base_pts);
#if defined(__VERSION__)
  report.machine = std::string("cxx ") + __VERSION__;
#else
  report.machine = "unknown toolchain";
#endif
  return report;
}

inline json bench_report_to_json(const BenchReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    json pj;
    pj["parameter"] = p.parameter;
    pj["vertices"] = p.vertex_count;
    pj["accept_seconds"] = p.accept_seconds;
    pj["baseline_seconds"] = p.baseline_seconds;
    pj["accepted"] = p.accepted;
    points.push_back(std::move(pj));
  }
  json j;
  j["family"] = r.family;
  j["points"] = std::move(points);
  j["accept_slope"] = r.accept_slope;
  j["baseline_slope"] = r.baseline_slope;
  j["machine"] = r.machine;
  return j;
}

}  // namespace sccmu
