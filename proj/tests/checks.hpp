// Test-side oracles for the intermediate-forest invariants of the bijection.
// Everything here recomputes structure from scratch on purpose, independently
// of the construction bookkeeping it checks.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "twistree/inc_tree_seq.hpp"
#include "twistree/plane_forest.hpp"

namespace checks {

using twistree::IncTreeSeq;
using twistree::PlaneForest;

inline std::vector<int> tree_nodes(const PlaneForest& f, int root) {
  std::vector<int> out{root};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int c = f.first_child(out[i]); c != PlaneForest::npos; c = f.next_sibling(c))
      out.push_back(c);
  return out;
}

inline bool is_root_edge(const PlaneForest& f, int c) {
  return f.parent(c) != PlaneForest::npos && f.parent(f.parent(c)) == PlaneForest::npos &&
         f.prev_sibling(c) == PlaneForest::npos;
}

inline int end_label(const PlaneForest& f, int c) { return f.right(c).second; }

// At every stage, each root edge leads to a leaf, carries no left
// label, and its right label starts with the smallest integer in the tree.
inline bool root_edge_invariant(const PlaneForest& f) {
  for (int r : f.roots()) {
    int leaf = f.first_child(r);
    if (leaf == PlaneForest::npos) return false;
    if (!f.is_leaf(leaf)) return false;
    if (f.has_left(leaf)) return false;
    if (!f.has_right(leaf)) return false;
    int mn = f.right(leaf).first;
    for (int v : tree_nodes(f, r)) {
      if (v == r) continue;
      if (f.has_left(v) && std::min(f.left(v).first, f.left(v).second) < mn) return false;
      if (f.has_right(v) && std::min(f.right(v).first, f.right(v).second) < mn) return false;
    }
  }
  return true;
}

// endLabel(eddy(e)) < endLabel(e) for every non-root edge.
inline bool eddy_ends_smaller(const PlaneForest& f) {
  for (int r : f.roots())
    for (int v : tree_nodes(f, r)) {
      if (v == r || is_root_edge(f, v)) continue;
      if (end_label(f, f.eddy(v)) >= end_label(f, v)) return false;
    }
  return true;
}

// Child end labels strictly increase left to right, and every end
// label in subtrees right of a child edge exceeds that edge's end label.
inline bool end_labels_increase_rightward(const PlaneForest& f) {
  for (int r : f.roots())
    for (int u : tree_nodes(f, r)) {
      int prev_end = 0;
      for (int c = f.first_child(u); c != PlaneForest::npos; c = f.next_sibling(c)) {
        if (end_label(f, c) <= prev_end) return false;
        prev_end = end_label(f, c);
        for (int s = f.next_sibling(c); s != PlaneForest::npos; s = f.next_sibling(s))
          for (int w : tree_nodes(f, s))
            if (end_label(f, w) <= end_label(f, c)) return false;
      }
    }
  return true;
}

inline void subtree_vertex_minima(const PlaneForest& f, int root, std::map<int, int>& mn) {
  for (int c = f.first_child(root); c != PlaneForest::npos; c = f.next_sibling(c))
    subtree_vertex_minima(f, c, mn);
  int m = f.vertex_label(root);
  for (int c = f.first_child(root); c != PlaneForest::npos; c = f.next_sibling(c))
    m = std::min(m, mn[c]);
  mn[root] = m;
}

// After vertex labels are assigned, every edge within a tree is a
// twist: the subtree minimum below the edge is smaller than the upper label.
inline bool all_edges_twists(const PlaneForest& f) {
  for (int r : f.roots()) {
    std::map<int, int> mn;
    subtree_vertex_minima(f, r, mn);
    for (int v : tree_nodes(f, r)) {
      if (v == r) continue;
      if (mn[v] >= f.vertex_label(f.parent(v))) return false;
    }
  }
  return true;
}

// The smallest label of any subtree sits at its leftmost leaf.
inline bool minima_at_leftmost_leaves(const PlaneForest& f) {
  for (int r : f.roots()) {
    std::map<int, int> mn;
    subtree_vertex_minima(f, r, mn);
    for (int v : tree_nodes(f, r)) {
      int leaf = v;
      while (f.first_child(leaf) != PlaneForest::npos) leaf = f.first_child(leaf);
      if (f.vertex_label(leaf) != mn[v]) return false;
    }
  }
  return true;
}

// Sibling subtrees are ordered by strictly increasing minima.
inline bool siblings_sorted_by_minima(const PlaneForest& f) {
  for (int r : f.roots()) {
    std::map<int, int> mn;
    subtree_vertex_minima(f, r, mn);
    for (int u : tree_nodes(f, r)) {
      int prev = 0;
      for (int c = f.first_child(u); c != PlaneForest::npos; c = f.next_sibling(c)) {
        if (mn[c] <= prev) return false;
        prev = mn[c];
      }
    }
  }
  return true;
}

// Records the labels of eddy(e) when an edge first appears (keyed by its
// right label, which is unique and immutable) and confirms they never change.
struct EddyStabilityLedger {
  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
  bool ok = true;

  void observe(const PlaneForest& f) {
    for (int r : f.roots())
      for (int v : tree_nodes(f, r)) {
        if (v == r || is_root_edge(f, v)) continue;
        int e = f.eddy(v);
        auto labels = std::make_pair(f.left(e), f.right(e));
        auto [it, inserted] = seen.emplace(f.right(v), labels);
        if (!inserted && it->second != labels) ok = false;
      }
  }
};

// Biconnected components of the induced labeled graph (test-only oracle),
// each returned as a set of edges.
inline std::vector<std::set<std::pair<int, int>>> biconnected_components(const IncTreeSeq& seq) {
  int n = seq.n;
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [a, b] : inc12_edges(seq)) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> num(n + 1, 0), low(n + 1, 0);
  std::vector<std::pair<int, int>> stack;
  std::vector<std::set<std::pair<int, int>>> comps;
  int counter = 0;
  auto dfs = [&](auto&& self, int u, int parent) -> void {
    num[u] = low[u] = ++counter;
    for (int w : adj[u]) {
      if (w == parent) continue;  // simple graph: one copy of the tree edge back
      if (num[w] == 0) {
        stack.emplace_back(std::min(u, w), std::max(u, w));
        self(self, w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= num[u]) {
          std::set<std::pair<int, int>> comp;
          std::pair<int, int> top(std::min(u, w), std::max(u, w));
          while (true) {
            auto e = stack.back();
            stack.pop_back();
            comp.insert(e);
            if (e == top) break;
          }
          comps.push_back(std::move(comp));
        }
      } else if (num[w] < num[u]) {
        stack.emplace_back(std::min(u, w), std::max(u, w));
        low[u] = std::min(low[u], num[w]);
      }
    }
  };
  if (n >= 1 && !adj[1].empty()) dfs(dfs, 1, 0);
  return comps;
}

}  // namespace checks
