#include "twistree/cayley_tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "twistree/errors.hpp"

namespace twistree {

CayleyTree::CayleyTree() : n_(1), parent_{0, 0}, min_{0, 1}, valid_(true) {}

CayleyTree::CayleyTree(int n, std::vector<int> parent) : n_(n), parent_(std::move(parent)) {
  if (!parent_.empty()) parent_[0] = 0;  // slot 0 is unused; keep == well-defined
  analyze();
}

CayleyTree CayleyTree::from_oriented(int n, std::vector<int> parent,
                                     const std::vector<int>& order, bool check) {
  CayleyTree t;
  t.n_ = n;
  t.parent_ = std::move(parent);
  t.valid_ = false;
  if (n < 1 || static_cast<int>(t.parent_.size()) != n + 1 ||
      static_cast<int>(order.size()) != n || t.parent_[1] != 0)
    return t;
  t.parent_[0] = 0;
  if (check) {
    std::vector<char> seen(n + 1, 0);
    for (int v : order) {
      if (v < 1 || v > n || seen[v]) return t;
      seen[v] = 1;
      if (v != 1) {
        int p = t.parent_[v];
        if (p < 1 || p > n || !seen[p]) return t;  // not root-first
      }
    }
  }
  t.min_.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) t.min_[v] = v;
  constexpr int kAhead = 16;
  for (int i = n - 1; i >= 0; --i) {
    if (i >= kAhead) __builtin_prefetch(&t.parent_[order[i - kAhead]]);
    if (i >= kAhead / 2) __builtin_prefetch(&t.min_[t.parent_[order[i - kAhead / 2]]], 1);
    int v = order[i];
    if (v != 1) t.min_[t.parent_[v]] = std::min(t.min_[t.parent_[v]], t.min_[v]);
  }
  t.valid_ = true;
  return t;
}

void CayleyTree::analyze() {
  valid_ = false;
  if (n_ < 1 || static_cast<int>(parent_.size()) != n_ + 1) return;
  if (parent_[1] != 0) return;
  for (int v = 2; v <= n_; ++v)
    if (parent_[v] < 1 || parent_[v] > n_ || parent_[v] == v) return;

  // CSR child adjacency, then a BFS from the root; all n vertices must be
  // reached for the map to be a tree.
  std::vector<int> off(n_ + 2, 0);
  for (int v = 2; v <= n_; ++v) ++off[parent_[v] + 1];
  for (int v = 1; v <= n_; ++v) off[v + 1] += off[v];
  std::vector<int> child(n_ - 1);
  {
    std::vector<int> cur(off.begin(), off.end() - 1);
    for (int v = 2; v <= n_; ++v) child[cur[parent_[v]]++] = v;
  }
  std::vector<int> order;
  order.reserve(n_);
  order.push_back(1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int u = order[i];
    for (int k = off[u]; k < off[u + 1]; ++k) order.push_back(child[k]);
  }
  if (static_cast<int>(order.size()) != n_) return;

  min_.assign(n_ + 1, 0);
  for (int v = 1; v <= n_; ++v) min_[v] = v;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (v != 1) min_[parent_[v]] = std::min(min_[parent_[v]], min_[v]);
  }
  valid_ = true;
}

void CayleyTree::fail_invalid(const char* op) {
  throw std::logic_error(std::string(op) + " requires a valid tree and an in-range vertex");
}

EdgeClass CayleyTree::classify_edge(int child) const {
  if (child == 1) throw RootHasNoEdge("vertex 1 has no parent edge");
  if (!valid_) throw std::logic_error("classify_edge requires a valid tree");
  if (child < 2 || child > n_) throw std::out_of_range("classify_edge: vertex out of range");
  return parent_[child] < min_[child] ? EdgeClass::Increasing : EdgeClass::Twist;
}

int CayleyTree::count_twists() const {
  if (!valid_) throw std::logic_error("count_twists requires a valid tree");
  int count = 0;
  for (int v = 2; v <= n_; ++v)
    if (min_[v] < parent_[v]) ++count;
  return count;
}

std::vector<std::vector<int>> CayleyTree::children() const {
  std::vector<std::vector<int>> ch(n_ + 1);
  for (int v = 2; v <= n_; ++v)
    if (parent_[v] >= 1 && parent_[v] <= n_) ch[parent_[v]].push_back(v);
  return ch;
}

CayleyReport validate_cayley(const CayleyTree& t) {
  CayleyReport r;
  const auto& parent = t.parents();
  int n = t.size();
  if (n < 1 || static_cast<int>(parent.size()) != n + 1 || parent[1] != 0) {
    r.ok = false;
    r.error = CayleyReport::Error::BadLabelSet;
    r.vertex = 1;
    r.detail = "parent map must cover exactly {1..n} with root 1";
    return r;
  }
  for (int v = 2; v <= n; ++v) {
    if (parent[v] < 1 || parent[v] > n) {
      r.ok = false;
      r.error = CayleyReport::Error::BadLabelSet;
      r.vertex = v;
      r.detail = "parent label out of range";
      return r;
    }
  }
  // Chase parent links with tri-color marking; a gray hit is a cycle.
  std::vector<unsigned char> state(n + 1, 0);  // 0 fresh, 1 on path, 2 done
  state[1] = 2;
  for (int v = 2; v <= n; ++v) {
    if (state[v] != 0) continue;
    int u = v;
    while (state[u] == 0) {
      state[u] = 1;
      u = parent[u];
    }
    if (state[u] == 1) {
      r.ok = false;
      r.error = CayleyReport::Error::CycleDetected;
      r.vertex = u;
      r.detail = "parent links do not reach vertex 1";
      return r;
    }
    u = v;
    while (state[u] == 1) {
      state[u] = 2;
      u = parent[u];
    }
  }
  return r;
}

}  // namespace twistree
