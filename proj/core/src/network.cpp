#include "agc/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agc/rng.hpp"

namespace agc {

Topology::Topology(std::size_t n) : n_(n), w_(n * n, 0.0) {}

Topology Topology::from_weights(std::size_t n, std::vector<double> weights) {
  if (weights.size() != n * n) throw std::invalid_argument("topology: weight matrix is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i * n + i] != 0.0) throw std::invalid_argument("topology: nonzero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = weights[i * n + j];
      if (!std::isfinite(a) || a < 0.0)
        throw std::invalid_argument("topology: weights must be finite and nonnegative");
      if (a != weights[j * n + i]) throw std::invalid_argument("topology: W is not symmetric");
    }
  }
  Topology t;
  t.n_ = n;
  t.w_ = std::move(weights);
  return t;
}

Topology Topology::from_edges(std::size_t n, std::span<const Edge> edges) {
  Topology t(n);
  for (const auto& e : edges) {
    if (e.i >= n || e.j >= n) throw std::invalid_argument("topology: edge endpoint out of range");
    if (e.i == e.j) throw std::invalid_argument("topology: self loops are not allowed");
    if (!std::isfinite(e.weight) || e.weight < 0.0)
      throw std::invalid_argument("topology: weights must be finite and nonnegative");
    t.w_[e.i * n + e.j] = e.weight;
    t.w_[e.j * n + e.i] = e.weight;
  }
  return t;
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (w_[i * n_ + j] > 0.0) out.push_back({i, j, w_[i * n_ + j]});
  return out;
}

std::size_t Topology::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (w_[i * n_ + j] > 0.0) ++count;
  return count;
}

Topology build_cycle(std::size_t n, double weight) {
  if (n < 3) throw std::invalid_argument("build_cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, weight});
  return Topology::from_edges(n, edges);
}

Topology build_complete(std::size_t n, double weight) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, weight});
  return Topology::from_edges(n, edges);
}

Topology build_star(std::size_t n, double weight) {
  std::vector<Edge> edges;
  for (std::size_t j = 1; j < n; ++j) edges.push_back({0, j, weight});
  return Topology::from_edges(n, edges);
}

Topology build_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("build_erdos_renyi: p must be in [0, 1]");
  const CounterRng rng(seed);
  std::vector<Edge> edges;
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform01(counter++) < p) edges.push_back({i, j, 1.0});
  return Topology::from_edges(n, edges);
}

Topology thin_links(const Topology& base, double keep, std::uint64_t seed) {
  if (!(keep >= 0.0 && keep <= 1.0)) throw std::invalid_argument("thin_links: keep must be in [0, 1]");
  const CounterRng rng(seed);
  std::vector<Edge> kept;
  std::uint64_t counter = 0;
  for (const auto& e : base.edges())
    if (rng.uniform01(counter++) < keep) kept.push_back(e);
  return Topology::from_edges(base.size(), kept);
}

double w_max(const Topology& t) {
  double best = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) row += t.weight(i, j);
    best = std::max(best, row);
  }
  if (!(best > 0.0)) throw std::invalid_argument("w_max: graph has no links");
  return best;
}

DenseMatrix laplacian(const Topology& t) {
  const std::size_t n = t.size();
  DenseMatrix L(n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      degree += t.weight(i, j);
      L(i, j) = -t.weight(i, j);
    }
    L(i, i) = degree;
  }
  return L;
}

bool is_connected(const Topology& t) {
  const std::size_t n = t.size();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v] && t.weight(u, v) > 0.0) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

Topology union_topology(std::span<const Topology> ts) {
  if (ts.empty()) throw std::invalid_argument("union_topology: empty list");
  const std::size_t n = ts.front().size();
  std::vector<double> w(n * n, 0.0);
  for (const auto& t : ts) {
    if (t.size() != n) throw std::invalid_argument("union_topology: dimension mismatch");
    const auto tw = t.weights();
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::max(w[k], tw[k]);
  }
  return Topology::from_weights(n, std::move(w));
}

TopologySchedule::TopologySchedule(std::vector<Segment> segments, std::size_t window)
    : window_(window), segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("schedule: no segments");
  if (window_ < 1) throw std::invalid_argument("schedule: window B must be >= 1");
  n_ = segments_.front().topology.size();
  for (const auto& s : segments_) {
    if (s.duration < 1) throw std::invalid_argument("schedule: segment duration must be >= 1");
    if (s.topology.size() != n_) throw std::invalid_argument("schedule: segment size mismatch");
    period_ += s.duration;
  }
}

TopologySchedule TopologySchedule::constant(Topology t) {
  std::vector<Segment> one;
  one.push_back({1, std::move(t)});
  return TopologySchedule(std::move(one), 1);
}

std::size_t TopologySchedule::segment_index_at(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("schedule: negative iteration");
  auto offset = static_cast<std::size_t>(k) % period_;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    if (offset < segments_[s].duration) return s;
    offset -= segments_[s].duration;
  }
  return segments_.size() - 1;  // unreachable
}

double TopologySchedule::w_max() const {
  double best = 0.0;
  for (const auto& s : segments_)
    if (s.topology.edge_count() > 0) best = std::max(best, agc::w_max(s.topology));
  if (!(best > 0.0)) throw std::invalid_argument("schedule: no segment has any link");
  return best;
}

bool certify_uniform_connectivity(const TopologySchedule& s) {
  const std::size_t period = s.period();
  const std::size_t nseg = s.segments().size();
  std::vector<char> active(nseg);
  for (std::size_t t = 0; t < period; ++t) {
    std::fill(active.begin(), active.end(), 0);
    // A window longer than the period covers every segment.
    const std::size_t span = std::min(s.window(), period);
    for (std::size_t d = 0; d < span; ++d)
      active[s.segment_index_at(static_cast<std::int64_t>(t + d))] = 1;
    std::vector<Topology> members;
    for (std::size_t k = 0; k < nseg; ++k)
      if (active[k]) members.push_back(s.segments()[k].topology);
    if (!is_connected(union_topology(members))) return false;
  }
  return true;
}

LinkGraph::LinkGraph(const Topology& t) : links_(t.edges()) {
  const std::size_t n = t.size();
  std::vector<std::vector<Incidence>> adj(n);
  for (std::size_t e = 0; e < links_.size(); ++e) {
    adj[links_[e].i].push_back({links_[e].j, e});
    adj[links_[e].j].push_back({links_[e].i, e});
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end(),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    offsets_[i + 1] = offsets_[i] + adj[i].size();
    incidence_.insert(incidence_.end(), adj[i].begin(), adj[i].end());
  }
}

}  // namespace agc
