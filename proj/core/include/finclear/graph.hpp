#pragma once

#include "finclear/types.hpp"

namespace finclear {

/// One strongly connected component of a weighted digraph.
struct StrongComponent {
  std::vector<int> nodes;
  bool is_sink = false;    // no arc leaves the component
  bool is_source = false;  // no arc enters the component
  bool is_isolated = false;
  bool is_trivial = false;  // single node
};

struct CondensationInfo {
  std::vector<StrongComponent> components;
  std::vector<int> component_of;  // node -> component index

  std::vector<int> sink_components() const;
};

/// SCC decomposition of the digraph induced by a nonnegative matrix
/// (arc (i,j) exists iff entry > 0). Tarjan's algorithm, iterative.
CondensationInfo strong_components(const Matrix& weights);

/// True iff from_node is in the target set or some walk reaches an element
/// of it.
bool reachable(const Matrix& weights, int from_node,
               const std::vector<int>& target_set);

/// True iff the target set is reachable from every node outside it.
bool globally_reachable(const Matrix& weights,
                        const std::vector<int>& target_set);

struct SchurStability {
  bool stable = false;
  std::vector<int> witness;  // sink component inside the subset, when unstable
  double spectral_radius_estimate = 0.0;  // power-iteration diagnostic
};

/// Schur stability of the principal submatrix of a row-stochastic matrix on a
/// proper subset of nodes: unstable exactly when the subset contains a whole
/// sink strong component of G[A]. The SCC criterion is authoritative; the
/// power-iteration estimate is diagnostic only. Throws std::invalid_argument
/// when the subset is the full node set.
SchurStability submatrix_schur_stable(const RelativeLiabilityMatrix& a,
                                      const std::vector<int>& subset);

/// Power-iteration estimate of the spectral radius of a nonnegative matrix.
double spectral_radius_estimate(const Matrix& m, int iterations = 10000);

}  // namespace finclear
