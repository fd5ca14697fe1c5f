#include "twistree/enumeration.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "twistree/errors.hpp"

namespace twistree {

namespace {

// Subtree minima for a partial parent array over vertices 1..size.
std::vector<int> partial_minima(const std::vector<int>& parent, int size) {
  std::vector<int> mn(size + 1);
  for (int v = 1; v <= size; ++v) mn[v] = v;
  std::vector<std::vector<int>> ch(size + 1);
  for (int v = 2; v <= size; ++v) ch[parent[v]].push_back(v);
  std::vector<int> order;
  order.reserve(size);
  order.push_back(1);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : ch[order[i]]) order.push_back(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != 1) mn[parent[*it]] = std::min(mn[parent[*it]], mn[*it]);
  return mn;
}

// Twist children of k (subtree minimum below k), sorted by increasing minima.
std::vector<int> twist_children_sorted(const std::vector<int>& parent, int size, int k,
                                       const std::vector<int>& mn) {
  std::vector<int> tw;
  for (int v = 2; v <= size; ++v)
    if (parent[v] == k && mn[v] < k) tw.push_back(v);
  std::sort(tw.begin(), tw.end(), [&](int a, int b) { return mn[a] < mn[b]; });
  return tw;
}

template <typename Fn>
void for_each_cayley_extension(std::vector<int>& parent, int size, Fn&& fn) {
  int v = size + 1;
  for (int k = 1; k <= size; ++k) {
    parent[v] = k;
    fn();
  }
  if (size < 2) return;
  std::vector<int> mn = partial_minima(parent, size);
  for (int k = 2; k <= size; ++k) {
    std::vector<int> tw = twist_children_sorted(parent, size, k, mn);
    int b = static_cast<int>(tw.size());
    int old_pk = parent[k];
    for (int a = 0; a <= b; ++a) {
      parent[v] = old_pk;
      parent[k] = v;
      for (int i = 0; i < a; ++i) parent[tw[i]] = v;
      fn();
      parent[k] = old_pk;
      for (int i = 0; i < a; ++i) parent[tw[i]] = k;
    }
  }
}

}  // namespace

std::vector<IncTreeSeq> successors_inc12(const IncTreeSeq& seq) {
  std::vector<IncTreeSeq> out;
  int v = seq.n + 1;
  IncTreeSeq next = seq;
  next.n = v;
  next.attach.emplace_back();
  for (int x = 1; x <= seq.n; ++x) {
    next.attach.back() = Attachment::leaf(x);
    out.push_back(next);
  }
  for (auto [x, y] : inc12_edges(seq)) {
    next.attach.back() = Attachment::triangle(x, y);
    out.push_back(next);
  }
  return out;
}

std::vector<CayleyTree> successors_cayley(const CayleyTree& t) {
  std::vector<CayleyTree> out;
  int size = t.size();
  std::vector<int> parent = t.parents();
  parent.resize(size + 2, 0);
  for_each_cayley_extension(parent, size, [&] {
    out.emplace_back(size + 1, std::vector<int>(parent.begin(), parent.begin() + size + 2));
  });
  return out;
}

void enumerate_inc12(int n, const std::function<void(const IncTreeSeq&)>& visit, int cap) {
  if (n < 1) throw std::invalid_argument("enumerate_inc12: n must be >= 1");
  if (n > cap) throw ResourceBound("enumeration size exceeds the configured cap");
  IncTreeSeq cur;
  std::vector<std::pair<int, int>> edges;
  auto rec = [&](auto&& self) -> void {
    if (cur.n == n) {
      visit(cur);
      return;
    }
    int v = cur.n + 1;
    cur.attach.emplace_back();
    ++cur.n;
    for (int x = 1; x < v; ++x) {
      cur.attach.back() = Attachment::leaf(x);
      edges.emplace_back(x, v);
      self(self);
      edges.pop_back();
    }
    std::size_t existing = edges.size();
    for (std::size_t i = 0; i < existing; ++i) {
      auto [x, y] = edges[i];
      cur.attach.back() = Attachment::triangle(x, y);
      edges.emplace_back(x, v);
      edges.emplace_back(y, v);
      self(self);
      edges.pop_back();
      edges.pop_back();
    }
    --cur.n;
    cur.attach.pop_back();
  };
  rec(rec);
}

void enumerate_cayley(int n, const std::function<void(const CayleyTree&)>& visit, int cap) {
  if (n < 1) throw std::invalid_argument("enumerate_cayley: n must be >= 1");
  if (n > cap) throw ResourceBound("enumeration size exceeds the configured cap");
  std::vector<int> parent(n + 1, 0);
  auto rec = [&](auto&& self, int size) -> void {
    if (size == n) {
      visit(CayleyTree(n, std::vector<int>(parent.begin(), parent.begin() + n + 1)));
      return;
    }
    for_each_cayley_extension(parent, size, [&] { self(self, size + 1); });
  };
  rec(rec, 1);
}

}  // namespace twistree
