#include "flexgt/topology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace flexgt {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

// Undirected edge list implied by the spec, deduplicated and validated.
std::vector<std::pair<int, int>> edge_list(const TopologySpec& spec) {
  const int n = spec.n;
  std::set<std::pair<int, int>> edges;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    edges.insert({a, b});
  };
  switch (spec.kind) {
    case TopologyKind::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add(i, j);
      break;
    case TopologyKind::ring:
      for (int i = 0; i < n; ++i) add(i, (i + 1) % n);
      break;
    case TopologyKind::exponential: {
      std::vector<int> offsets =
          spec.offsets.empty() ? default_exponential_offsets(n) : spec.offsets;
      for (int o : offsets)
        for (int i = 0; i < n; ++i) add(i, (i + o) % n);
      break;
    }
    case TopologyKind::custom:
      for (auto [a, b] : spec.edges) add(a, b);
      break;
  }
  return {edges.begin(), edges.end()};
}

bool connected(int n, const std::vector<std::vector<int>>& adjacency) {
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

void validate(const TopologySpec& spec) {
  require(spec.n >= 2, "topology: n must be at least 2");
  if (spec.kind != TopologyKind::exponential)
    require(spec.offsets.empty(), "topology: offsets only apply to the exponential kind");
  if (spec.kind != TopologyKind::custom)
    require(spec.edges.empty(), "topology: edges only apply to the custom kind");
  if (spec.kind == TopologyKind::exponential) {
    std::set<int> distinct(spec.offsets.begin(), spec.offsets.end());
    require(distinct.size() == spec.offsets.size(), "topology: offsets must be distinct");
    for (int o : spec.offsets)
      require(o >= 1 && o < spec.n, "topology: offsets must lie in [1, n)");
  }
  if (spec.kind == TopologyKind::custom) {
    require(!spec.edges.empty(), "topology: edges must be non-empty for the custom kind");
    for (auto [a, b] : spec.edges) {
      require(a >= 0 && a < spec.n && b >= 0 && b < spec.n,
              "topology: edge endpoints must lie in [0, n)");
      require(a != b, "topology: edges must not be self-loops");
    }
  }
}

}  // namespace

const char* to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::complete: return "complete";
    case TopologyKind::ring: return "ring";
    case TopologyKind::exponential: return "exponential";
    case TopologyKind::custom: return "custom";
  }
  return "unknown";
}

TopologyKind topology_kind_from_string(const std::string& name) {
  if (name == "complete") return TopologyKind::complete;
  if (name == "ring") return TopologyKind::ring;
  if (name == "exponential") return TopologyKind::exponential;
  if (name == "custom") return TopologyKind::custom;
  throw std::invalid_argument("unknown topology kind: " + name);
}

TopologySpec TopologySpec::complete(int n) { return {TopologyKind::complete, n, {}, {}}; }

TopologySpec TopologySpec::ring(int n) { return {TopologyKind::ring, n, {}, {}}; }

TopologySpec TopologySpec::exponential(int n, std::vector<int> offsets) {
  return {TopologyKind::exponential, n, std::move(offsets), {}};
}

TopologySpec TopologySpec::custom(int n, std::vector<std::pair<int, int>> edges) {
  return {TopologyKind::custom, n, {}, std::move(edges)};
}

std::vector<int> default_exponential_offsets(int n) {
  std::vector<int> offsets;
  for (int o : {1, 2, 4, 8, 16})
    if (o < n) offsets.push_back(o);
  return offsets;
}

WeightMatrix build_weight_matrix(const TopologySpec& spec) {
  validate(spec);
  const int n = spec.n;
  const auto edges = edge_list(spec);

  std::vector<std::vector<int>> adjacency(n);
  for (auto [a, b] : edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  if (!connected(n, adjacency)) throw std::invalid_argument("disconnected topology");

  std::vector<int> degree(n);
  for (int i = 0; i < n; ++i) degree[i] = static_cast<int>(adjacency[i].size());

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : edges) {
    const double weight = 1.0 / (1.0 + std::max(degree[a], degree[b]));
    w(a, b) = weight;
    w(b, a) = weight;
  }
  for (int i = 0; i < n; ++i) {
    double off_diagonal = 0.0;
    for (int j : adjacency[i]) off_diagonal += w(i, j);
    w(i, i) = 1.0 - off_diagonal;
  }

  WeightMatrix result;
  result.entries = std::move(w);
  result.rho = spectral_radius_sq(result.entries);
  return result;
}

double spectral_radius_sq(const Eigen::MatrixXd& w) {
  const auto n = w.rows();
  if (n != w.cols() || !w.isApprox(w.transpose(), 1e-12))
    throw std::invalid_argument("spectral_radius_sq: matrix must be symmetric");
  Eigen::MatrixXd centered = w - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered, Eigen::EigenvaluesOnly);
  double largest = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    largest = std::max(largest, std::abs(solver.eigenvalues()[i]));
  return largest * largest;
}

void gossip_sweep(const Eigen::MatrixXd& w, Eigen::MatrixXd& z,
                  Eigen::MatrixXd& scratch) {
  const auto n = z.rows();
  const auto p = z.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < p; ++c) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) acc += w(i, j) * z(j, c);
      scratch(i, c) = acc;
    }
  }
  z.swap(scratch);
}

Eigen::MatrixXd mix(const WeightMatrix& w, const Eigen::MatrixXd& z, int d1) {
  if (z.rows() != w.entries.rows())
    throw std::invalid_argument("mix: row count must match the node count");
  if (d1 < 1) throw std::invalid_argument("mix: d1 must be at least 1");
  Eigen::MatrixXd result = z;
  Eigen::MatrixXd scratch(z.rows(), z.cols());
  for (int s = 0; s < d1; ++s) gossip_sweep(w.entries, result, scratch);
  return result;
}

}  // namespace flexgt
