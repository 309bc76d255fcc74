#include "finclear/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace finclear {

std::vector<int> CondensationInfo::sink_components() const {
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(components.size()); ++c)
    if (components[c].is_sink) out.push_back(c);
  return out;
}

namespace {

struct TarjanFrame {
  int node;
  int next_neighbor;
};

}  // namespace

CondensationInfo strong_components(const Matrix& weights) {
  const int n = static_cast<int>(weights.rows());
  if (n == 0) throw std::invalid_argument("strong_components: empty node set");

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (weights(i, j) > 0.0) adj[i].push_back(j);

  // Iterative Tarjan.
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<int> comp_of(n, -1);
  std::vector<std::vector<int>> comps;
  int counter = 0;

  for (int start = 0; start < n; ++start) {
    if (index[start] != -1) continue;
    std::vector<TarjanFrame> frames{{start, 0}};
    index[start] = lowlink[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      TarjanFrame& fr = frames.back();
      const int v = fr.node;
      if (fr.next_neighbor < static_cast<int>(adj[v].size())) {
        const int w = adj[v][fr.next_neighbor++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        if (lowlink[v] == index[v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp_of[w] = static_cast<int>(comps.size());
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().node;
          lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
        }
      }
    }
  }

  CondensationInfo info;
  info.component_of = comp_of;
  const int nc = static_cast<int>(comps.size());
  std::vector<bool> has_out(nc, false), has_in(nc, false);
  for (int i = 0; i < n; ++i)
    for (int j : adj[i])
      if (comp_of[i] != comp_of[j]) {
        has_out[comp_of[i]] = true;
        has_in[comp_of[j]] = true;
      }
  for (int c = 0; c < nc; ++c) {
    StrongComponent sc;
    sc.nodes = comps[c];
    sc.is_sink = !has_out[c];
    sc.is_source = !has_in[c];
    sc.is_isolated = sc.is_sink && sc.is_source;
    sc.is_trivial = sc.nodes.size() == 1;
    info.components.push_back(std::move(sc));
  }
  return info;
}

bool reachable(const Matrix& weights, int from_node,
               const std::vector<int>& target_set) {
  const int n = static_cast<int>(weights.rows());
  if (from_node < 0 || from_node >= n)
    throw std::invalid_argument("reachable: node index out of range");
  std::vector<bool> target(n, false);
  for (int j : target_set) {
    if (j < 0 || j >= n)
      throw std::invalid_argument("reachable: target index out of range");
    target[j] = true;
  }
  if (target[from_node]) return true;
  std::vector<bool> seen(n, false);
  std::deque<int> queue{from_node};
  seen[from_node] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w = 0; w < n; ++w) {
      if (weights(v, w) <= 0.0 || seen[w]) continue;
      if (target[w]) return true;
      seen[w] = true;
      queue.push_back(w);
    }
  }
  return false;
}

bool globally_reachable(const Matrix& weights,
                        const std::vector<int>& target_set) {
  const int n = static_cast<int>(weights.rows());
  std::vector<bool> target(n, false);
  for (int j : target_set) target[j] = true;
  for (int i = 0; i < n; ++i)
    if (!target[i] && !reachable(weights, i, target_set)) return false;
  return true;
}

double spectral_radius_estimate(const Matrix& m, int iterations) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 0.0;
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double radius = 0.0;
  for (int k = 0; k < iterations; ++k) {
    Vector next = m * v;
    const double norm = next.norm();
    if (norm <= 1e-300) return 0.0;  // nilpotent action crushed the iterate
    radius = norm;
    v = next / norm;
  }
  return radius;
}

SchurStability submatrix_schur_stable(const RelativeLiabilityMatrix& a,
                                      const std::vector<int>& subset) {
  const int n = a.size();
  std::vector<bool> in_subset(n, false);
  for (int v : subset) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("submatrix_schur_stable: index out of range");
    in_subset[v] = true;
  }
  int count = 0;
  for (bool b : in_subset) count += b;
  if (count == n)
    throw std::invalid_argument(
        "submatrix_schur_stable: subset must be a proper subset");

  SchurStability result;
  result.stable = true;
  const CondensationInfo info = strong_components(a.entries());
  for (const StrongComponent& comp : info.components) {
    if (!comp.is_sink) continue;
    const bool contained = std::all_of(comp.nodes.begin(), comp.nodes.end(),
                                       [&](int v) { return in_subset[v]; });
    if (contained) {
      result.stable = false;
      result.witness = comp.nodes;
      break;
    }
  }

  std::vector<int> sorted(subset);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int m = static_cast<int>(sorted.size());
  Matrix sub(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) sub(r, c) = a(sorted[r], sorted[c]);
  result.spectral_radius_estimate = spectral_radius_estimate(sub, 10000);
  return result;
}

}  // namespace finclear
