#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace flexgt {

enum class TopologyKind { complete, ring, exponential, custom };

const char* to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

/// Description of an undirected communication graph. Self-loops are implied
/// by the weight scheme and never listed explicitly.
struct TopologySpec {
  TopologyKind kind = TopologyKind::complete;
  int n = 2;
  std::vector<int> offsets;                       // exponential only
  std::vector<std::pair<int, int>> edges;         // custom only

  static TopologySpec complete(int n);
  static TopologySpec ring(int n);
  static TopologySpec exponential(int n, std::vector<int> offsets = {});
  static TopologySpec custom(int n, std::vector<std::pair<int, int>> edges);
};

/// Offsets {1, 2, 4, 8, 16} truncated to values below n.
std::vector<int> default_exponential_offsets(int n);

/// Symmetric doubly stochastic mixing matrix with its cached spectral
/// quantity rho = ||W - J||_2^2, where J is the all-1/n averaging matrix.
struct WeightMatrix {
  Eigen::MatrixXd entries;
  double rho = 0.0;

  int n() const { return static_cast<int>(entries.rows()); }
};

/// Metropolis weights on the spec's graph: W(i,j) = 1/(1 + max(deg_i, deg_j))
/// for every edge, self-weight fills the row to one. Throws on invalid specs
/// and on disconnected graphs.
WeightMatrix build_weight_matrix(const TopologySpec& spec);

/// Largest squared non-principal eigenvalue of a symmetric doubly stochastic
/// matrix. Throws if the input is not symmetric.
double spectral_radius_sq(const Eigen::MatrixXd& w);

/// One synchronized gossip sweep z <- W z, written as explicit per-node
/// accumulation so results replay bit-identically against scalar references.
/// scratch must have the shape of z.
void gossip_sweep(const Eigen::MatrixXd& w, Eigen::MatrixXd& z,
                  Eigen::MatrixXd& scratch);

/// W^{d1} z via d1 successive sweeps.
Eigen::MatrixXd mix(const WeightMatrix& w, const Eigen::MatrixXd& z, int d1);

}  // namespace flexgt
