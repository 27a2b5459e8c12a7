#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace agc {

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

/// Dense row-major square matrix; only used for Laplacians and tests.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Undirected weighted communication graph stored as a dense symmetric
/// weight matrix with zero diagonal. Immutable once built.
class Topology {
 public:
  Topology() = default;

  /// Graph on n nodes with no links.
  explicit Topology(std::size_t n);

  /// Validates symmetry, zero diagonal and nonnegative finite weights.
  static Topology from_weights(std::size_t n, std::vector<double> weights);

  /// Duplicate (i, j) pairs keep the last weight; self loops and
  /// out-of-range endpoints are rejected.
  static Topology from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return n_; }
  double weight(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  std::span<const double> weights() const { return w_; }

  /// Positive-weight links with i < j in lexicographic order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  bool operator==(const Topology&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

/// Ring 0-1-...-(n-1)-0. Requires n >= 3.
Topology build_cycle(std::size_t n, double weight = 1.0);
Topology build_complete(std::size_t n, double weight = 1.0);
/// Node 0 is the hub.
Topology build_star(std::size_t n, double weight = 1.0);

/// G(n, p) with unit weights. Pair (i, j), i < j, consumes draw number
/// c = (index of the pair in lexicographic order) of CounterRng(seed) and
/// is linked iff uniform01(c) < p.
Topology build_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Link-failure snapshot of `base`: the e-th link of base.edges() survives
/// iff CounterRng(seed).uniform01(e) < keep.
Topology thin_links(const Topology& base, double keep, std::uint64_t seed);

/// Maximum weighted degree. Throws for a graph without any link.
double w_max(const Topology& t);

/// L = D - W.
DenseMatrix laplacian(const Topology& t);

bool is_connected(const Topology& t);

/// Entrywise maximum of the weights.
Topology union_topology(std::span<const Topology> ts);

/// A topology that is active for `duration` consecutive iterations.
struct Segment {
  std::size_t duration = 1;
  Topology topology;
};

/// Time-varying topology: segments played in order and repeated cyclically.
class TopologySchedule {
 public:
  TopologySchedule() = default;
  TopologySchedule(std::vector<Segment> segments, std::size_t window);

  static TopologySchedule constant(Topology t);

  std::size_t size() const { return n_; }
  std::size_t period() const { return period_; }
  std::size_t window() const { return window_; }
  const std::vector<Segment>& segments() const { return segments_; }

  std::size_t segment_index_at(std::int64_t k) const;
  const Topology& at(std::int64_t k) const { return segments_[segment_index_at(k)].topology; }

  /// Largest weighted degree over every segment topology; used as the
  /// run-wide W_max so the per-step ramp bound holds in every segment.
  double w_max() const;

 private:
  std::size_t n_ = 0;
  std::size_t period_ = 0;
  std::size_t window_ = 1;
  std::vector<Segment> segments_;
};

/// True iff for every start t in [0, period) the union of the topologies
/// active during iterations t, ..., t + window - 1 is connected.
bool certify_uniform_connectivity(const TopologySchedule& s);

/// Sparse view of a Topology used by the update loops. Each node lists its
/// neighbours in ascending order together with the index of the shared
/// link in `links()`.
class LinkGraph {
 public:
  struct Incidence {
    std::size_t neighbor;
    std::size_t link;
  };

  LinkGraph() = default;
  explicit LinkGraph(const Topology& t);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const Edge> links() const { return links_; }
  std::span<const Incidence> incident(std::size_t i) const {
    return std::span<const Incidence>(incidence_).subspan(offsets_[i],
                                                         offsets_[i + 1] - offsets_[i]);
  }

 private:
  std::vector<Edge> links_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidence_;
};

}  // namespace agc
