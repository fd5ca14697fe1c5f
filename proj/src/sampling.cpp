#include "twistree/sampling.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "twistree/bijection.hpp"
#include "twistree/errors.hpp"

namespace twistree {

namespace {

// Orient an edge list as a tree rooted at 1.
CayleyTree orient_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> off(n + 2, 0);
  for (auto [a, b] : edges) {
    ++off[a + 1];
    ++off[b + 1];
  }
  for (int v = 1; v <= n; ++v) off[v + 1] += off[v];
  std::vector<int> adj(2 * edges.size());
  {
    std::vector<int> cur(off.begin(), off.end() - 1);
    for (auto [a, b] : edges) {
      adj[cur[a]++] = b;
      adj[cur[b]++] = a;
    }
  }
  std::vector<int> parent(n + 1, 0);
  std::vector<int> queue{1};
  std::vector<char> seen(n + 1, 0);
  seen[1] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int u = queue[i];
    for (int k = off[u]; k < off[u + 1]; ++k) {
      int w = adj[k];
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  return CayleyTree(n, std::move(parent));
}

}  // namespace

Mt19937Rng::Mt19937Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

int Mt19937Rng::next_int(int k) {
  if (k < 1) throw std::invalid_argument("next_int: k must be >= 1");
  const std::uint64_t range = static_cast<std::uint64_t>(k);
  const std::uint64_t mask = std::bit_ceil(range) - 1;
  for (;;) {
    std::uint64_t v = gen_() & mask;
    if (v < range) return static_cast<int>(v) + 1;
  }
}

int ScriptedRng::next_int(int k) {
  if (pos_ >= values_.size()) throw RngExhausted("scripted stream exhausted");
  int v = values_[pos_++];
  if (v < 1 || v > k) throw std::invalid_argument("scripted value outside {1..k}");
  return v;
}

std::pair<CayleyTree, SampleStats> sample_cayley(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_cayley: n must be >= 1");
  SampleStats stats;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<int> vertices(n + 1);
  std::iota(vertices.begin(), vertices.end(), 0);
  // Every recorded edge runs from a visited vertex to a newly visited one, so
  // the edge list is a tree already oriented away from the walk's start
  // (vertex n), with children emitted after their parents. Record the walk
  // sequentially and scatter it into the parent map afterwards, where the
  // access pattern is visible far enough ahead to prefetch.
  std::vector<int> order, walk_parent;
  order.reserve(n);
  walk_parent.reserve(n);
  order.push_back(n);
  walk_parent.push_back(0);
  for (int nb_unvisited = n - 1; nb_unvisited >= 1; --nb_unvisited) {
    int prev = nb_unvisited + 1;
    int next = rng.next_int(n);
    ++stats.draws;
    if (next > nb_unvisited) {
      // The walk stepped onto an already visited vertex; skip ahead by
      // forcing the following step to an unvisited one.
      prev = next;
      next = rng.next_int(nb_unvisited);
      ++stats.draws;
    }
    order.push_back(vertices[next]);
    walk_parent.push_back(vertices[prev]);
    std::swap(vertices[next], vertices[nb_unvisited]);
  }
  std::vector<int> disc_parent(n + 1, 0);
  constexpr int kAhead = 16;
  for (int i = 1; i < n; ++i) {
    if (i + kAhead < n) __builtin_prefetch(&disc_parent[order[i + kAhead]], 1);
    disc_parent[order[i]] = walk_parent[i];
  }

  // Re-root at 1 in place: exactly the edges on the path from 1 up to n flip.
  // The next hop is saved before each pointer is overwritten.
  std::vector<int> path{1};
  for (int c = 1, p = disc_parent[1]; c != n;) {
    int next = disc_parent[p];
    disc_parent[p] = c;
    path.push_back(p);
    c = p;
    p = next;
  }
  disc_parent[1] = 0;

  // A root-first order for the re-rooted tree: the flipped path starting at
  // the new root, then the discovery order with path vertices skipped.
  std::vector<char> on_path(n + 1, 0);
  for (int v : path) on_path[v] = 1;
  std::vector<int> rooted_order;
  rooted_order.reserve(n);
  rooted_order.insert(rooted_order.end(), path.begin(), path.end());
  for (int v : order)
    if (!on_path[v]) rooted_order.push_back(v);

  CayleyTree t = CayleyTree::from_oriented(n, std::move(disc_parent), rooted_order,
                                           /*check=*/false);
  stats.elapsed = std::chrono::steady_clock::now() - t0;
  return {std::move(t), stats};
}

std::pair<IncTreeSeq, SampleStats> sample_inc12(int n, Rng& rng) {
  auto t0 = std::chrono::steady_clock::now();
  auto [tree, stats] = sample_cayley(n, rng);
  IncTreeSeq seq = tau_inverse(tree);
  stats.elapsed = std::chrono::steady_clock::now() - t0;
  return {std::move(seq), stats};
}

std::vector<int> prufer_encode(const CayleyTree& t) {
  int n = t.size();
  std::vector<int> code;
  if (n <= 2) return code;
  code.reserve(n - 2);

  std::vector<int> off(n + 2, 0);
  for (int v = 2; v <= n; ++v) {
    ++off[v + 1];
    ++off[t.parent_of(v) + 1];
  }
  for (int v = 1; v <= n; ++v) off[v + 1] += off[v];
  std::vector<int> adj(2 * (n - 1));
  {
    std::vector<int> cur(off.begin(), off.end() - 1);
    for (int v = 2; v <= n; ++v) {
      adj[cur[v]++] = t.parent_of(v);
      adj[cur[t.parent_of(v)]++] = v;
    }
  }
  std::vector<int> deg(n + 1, 0);
  for (int v = 1; v <= n; ++v) deg[v] = off[v + 1] - off[v];
  std::vector<int> cursor(off.begin(), off.end() - 1);

  int ptr = 1;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int i = 0; i < n - 2; ++i) {
    int u = -1;
    for (int& c = cursor[leaf];; ++c) {
      if (deg[adj[c]] > 0) {
        u = adj[c];
        break;
      }
    }
    code.push_back(u);
    deg[leaf] = 0;
    if (--deg[u] == 1 && u < ptr) {
      leaf = u;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return code;
}

CayleyTree prufer_decode(const std::vector<int>& code, int n) {
  if (n < 1) throw BadCode("vertex count must be >= 1");
  if (static_cast<int>(code.size()) != std::max(0, n - 2))
    throw BadCode("code length must be n-2");
  for (int c : code)
    if (c < 1 || c > n) throw BadCode("code symbol out of range");
  if (n == 1) return CayleyTree();
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  std::vector<int> deg(n + 1, 1);
  for (int c : code) ++deg[c];
  int ptr = 1;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int c : code) {
    edges.emplace_back(leaf, c);
    --deg[leaf];
    if (--deg[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n);
  return orient_from_edges(n, edges);
}

double chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

}  // namespace twistree
