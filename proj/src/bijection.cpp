#include "twistree/bijection.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "twistree/errors.hpp"

namespace twistree {

namespace {

std::uint64_t pair_key(int x, int y) {
  return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y);
}

// Locations of edge labels: pair -> (node the edge leads into, side).
// Every pair sits on exactly one side of one edge at any time.
struct LabelIndex {
  enum Side { kLeft = 0, kRight = 1 };
  std::unordered_map<std::uint64_t, std::pair<int, Side>> loc;

  void put(int x, int y, int node, Side side) { loc[pair_key(x, y)] = {node, side}; }
  std::pair<int, Side> find(int x, int y) const {
    auto it = loc.find(pair_key(x, y));
    if (it == loc.end()) throw LabelNotFound("no edge carries the requested label");
    return it->second;
  }
};

void require_valid_seq(const IncTreeSeq& seq) {
  Inc12Report r = validate_inc12(seq);
  if (!r.ok) throw std::invalid_argument("invalid construction sequence: " + r.detail);
}

}  // namespace

DfsOrder rightmost_dfs(const PlaneForest& f, int root) {
  DfsOrder ord;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v != root) ord.edges.push_back(v);
    ord.vertices.push_back(v);
    for (int c = f.first_child(v); c != PlaneForest::npos; c = f.next_sibling(c))
      stack.push_back(c);  // left-to-right pushes, so the rightmost pops first
  }
  return ord;
}

PlaneForest tau_step1(const IncTreeSeq& seq, const StepObserver& observer) {
  require_valid_seq(seq);
  PlaneForest f;
  LabelIndex labels;
  struct RootSortKey {
    int min, end, root;
  };
  std::vector<RootSortKey> keys;

  for (int v = 2; v <= seq.n; ++v) {
    const Attachment& a = seq.attach[v - 2];
    if (!a.is_triangle()) {
      // Rule 1: a fresh single-edge tree, right label (x,v).
      int r = f.new_node();
      int c = f.new_node();
      f.append_child(r, c);
      f.set_right(c, a.x, v);
      labels.put(a.x, v, c, LabelIndex::kRight);
      f.add_root(r);
      keys.push_back({a.x, v, r});
    } else {
      auto [w, side] = labels.find(a.x, a.y);
      if (side == LabelIndex::kLeft) {
        // Rule 2 Left: split the carrier; the upper half keeps the old
        // labels, the lower half becomes the new edge.
        int m = f.split_edge_above(w);
        auto [lx, ly] = f.left(w);
        auto [rx, ry] = f.right(w);
        f.set_left(m, lx, ly);
        f.set_right(m, rx, ry);
        labels.put(lx, ly, m, LabelIndex::kLeft);
        labels.put(rx, ry, m, LabelIndex::kRight);
        f.set_left(w, a.x, v);
        f.set_right(w, a.y, v);
        labels.put(a.x, v, w, LabelIndex::kLeft);
        labels.put(a.y, v, w, LabelIndex::kRight);
      } else {
        // Rule 2 Right: new right sibling of the carrier, adopting everything
        // to its right.
        int w2 = f.new_node();
        f.insert_right_sibling_with_transfer(w, w2);
        f.set_left(w2, a.x, v);
        f.set_right(w2, a.y, v);
        labels.put(a.x, v, w2, LabelIndex::kLeft);
        labels.put(a.y, v, w2, LabelIndex::kRight);
      }
    }
    if (observer) observer(v, f);
  }

  std::sort(keys.begin(), keys.end(), [](const RootSortKey& a, const RootSortKey& b) {
    return a.min != b.min ? a.min < b.min : a.end < b.end;
  });
  f.roots().clear();
  for (const RootSortKey& k : keys) f.add_root(k.root);
  return f;
}

PlaneForest tau_step2(PlaneForest f) {
  for (int r : f.roots()) {
    int leaf = f.first_child(r);
    f.set_vertex_label(leaf, f.right(leaf).first);
    DfsOrder ord = rightmost_dfs(f, r);
    for (std::size_t i = 0; i + 1 < ord.vertices.size(); ++i)
      f.set_vertex_label(ord.vertices[i], f.right(ord.vertices[i + 1]).second);
  }
  return f;
}

CayleyTree tau_step3(const PlaneForest& f) {
  int n = f.node_count() - static_cast<int>(f.roots().size()) + 1;
  std::vector<int> parent(n + 1, -1);
  parent[1] = 0;
  auto assign = [&](int v, int p) {
    if (v < 1 || v > n || parent[v] != -1)
      throw MergeConflict("duplicate or out-of-range vertex label while merging");
    parent[v] = p;
  };
  std::vector<int> stack;
  for (int r : f.roots()) {
    int leaf = f.first_child(r);
    // The root edge flips: the piece hangs below its minimum label.
    assign(f.vertex_label(r), f.vertex_label(leaf));
    stack.push_back(r);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v != r && v != leaf) assign(f.vertex_label(v), f.vertex_label(f.parent(v)));
      for (int c = f.first_child(v); c != PlaneForest::npos; c = f.next_sibling(c))
        stack.push_back(c);
    }
  }
  for (int v = 2; v <= n; ++v)
    if (parent[v] == -1) throw MergeConflict("vertex label missing from the forest");
  CayleyTree t(n, std::move(parent));
  if (!t.structurally_valid()) throw MergeConflict("merged forest is not a tree");
  return t;
}

CayleyTree tau(const IncTreeSeq& seq) {
  return tau_step3(tau_step2(tau_step1(seq)));
}

CayleyTree tau_express(const IncTreeSeq& seq) {
  require_valid_seq(seq);
  PlaneForest f;
  LabelIndex labels;
  std::vector<int> node_of(seq.n + 1, PlaneForest::npos);
  int root = f.new_node();
  f.set_vertex_label(root, 1);
  f.add_root(root);
  node_of[1] = root;

  for (int v = 2; v <= seq.n; ++v) {
    const Attachment& a = seq.attach[v - 2];
    if (!a.is_triangle()) {
      // Rule 1: leaf v as the rightmost child of vertex x, left label only.
      int c = f.new_node();
      f.append_child(node_of[a.x], c);
      f.set_left(c, a.x, v);
      labels.put(a.x, v, c, LabelIndex::kLeft);
      f.set_vertex_label(c, v);
      node_of[v] = c;
    } else {
      auto [b, side] = labels.find(a.x, a.y);
      if (side == LabelIndex::kLeft) {
        // Rule 2 Left: vertex v drops into the middle of the carrier edge;
        // the upper half inherits the carrier's labels.
        int m = f.split_edge_above(b);
        auto [lx, ly] = f.left(b);
        f.set_left(m, lx, ly);
        labels.put(lx, ly, m, LabelIndex::kLeft);
        f.clear_left(b);
        if (f.has_right(b)) {
          auto [rx, ry] = f.right(b);
          f.set_right(m, rx, ry);
          labels.put(rx, ry, m, LabelIndex::kRight);
        }
        f.set_left(b, a.x, v);
        f.set_right(b, a.y, v);
        labels.put(a.x, v, b, LabelIndex::kLeft);
        labels.put(a.y, v, b, LabelIndex::kRight);
        f.set_vertex_label(m, v);
        node_of[v] = m;
      } else {
        // Rule 2 Right: the carrier's source takes label v and its old label
        // moves to a new right sibling of the carrier, which adopts the
        // subtrees displaced to its right.
        int src = f.parent(b);
        int old_label = f.vertex_label(src);
        f.set_vertex_label(src, v);
        node_of[v] = src;
        int down = f.new_node();
        f.insert_right_sibling_with_transfer(b, down);
        f.set_vertex_label(down, old_label);
        node_of[old_label] = down;
        f.set_left(down, a.x, v);
        f.set_right(down, a.y, v);
        labels.put(a.x, v, down, LabelIndex::kLeft);
        labels.put(a.y, v, down, LabelIndex::kRight);
      }
    }
  }

  std::vector<int> parent(seq.n + 1, -1);
  parent[1] = 0;
  if (f.vertex_label(root) != 1) throw MergeConflict("express tree root lost label 1");
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v != root) parent[f.vertex_label(v)] = f.vertex_label(f.parent(v));
    for (int c = f.first_child(v); c != PlaneForest::npos; c = f.next_sibling(c))
      stack.push_back(c);
  }
  return CayleyTree(seq.n, std::move(parent));
}

namespace {

// Stable LSD radix sort of packed words by the key field starting at
// `key_shift`; the 1024-entry bucket tables stay cache-resident, unlike a
// counting sort keyed over {1..n}.
void radix_sort_by_key(std::vector<std::uint64_t>& a, int key_shift, std::uint64_t key_max) {
  constexpr int kBits = 10;
  constexpr int kBuckets = 1 << kBits;
  std::vector<std::uint64_t> tmp(a.size());
  for (int shift = key_shift; (key_max >> (shift - key_shift)) != 0; shift += kBits) {
    std::uint32_t counts[kBuckets + 1] = {0};
    for (std::uint64_t x : a) ++counts[((x >> shift) & (kBuckets - 1)) + 1];
    for (int k = 1; k <= kBuckets; ++k) counts[k] += counts[k - 1];
    for (std::uint64_t x : a) tmp[counts[(x >> shift) & (kBuckets - 1)]++] = x;
    a.swap(tmp);
  }
}

void radix_sort_pairs(std::vector<std::uint64_t>& a, std::uint32_t key_max) {
  radix_sort_by_key(a, 32, key_max);
}

// Shared preparation for the reversed construction: piece roots ordered by
// (duplicated parent label, own label), and the twist children grouped per
// parent with each group in increasing order of subtree minima. Built with
// stable radix sorts; the grouped parents ascend, so the span writes stream.
struct InversePlan {
  std::vector<std::uint64_t> piece_roots;  // parent << 32 | vertex
  std::vector<int> grouped;
  std::vector<int> span;  // span[2v] .. span[2v+1] delimit v's group
  std::vector<std::uint64_t> has_kids;

  bool twist_kids(int v) const { return (has_kids[v >> 6] >> (v & 63)) & 1; }

  // Appends one piece to `f` in plane preorder: the root, the pendant leaf
  // carrying the duplicated parent, then the twist subtrees by minima.
  void build_piece(PlaneForest& f, std::uint64_t pr, std::vector<std::pair<int, int>>& stack) const {
    int v = static_cast<int>(pr & 0xffffffffu);
    int rv = f.new_node();
    f.set_vertex_label(rv, v);
    f.add_root(rv);
    int pendant = f.new_node();
    f.set_vertex_label(pendant, static_cast<int>(pr >> 32));
    f.append_child(rv, pendant);
    if (twist_kids(v))
      for (int k = span[2 * v + 1] - 1; k >= span[2 * v]; --k) {
        __builtin_prefetch(&span[2 * grouped[k]]);
        stack.push_back({grouped[k], rv});
      }
    while (!stack.empty()) {
      auto [w, pa] = stack.back();
      stack.pop_back();
      int nd = f.new_node();
      f.set_vertex_label(nd, w);
      f.append_child(pa, nd);
      if (twist_kids(w))
        for (int k = span[2 * w + 1] - 1; k >= span[2 * w]; --k) {
          __builtin_prefetch(&span[2 * grouped[k]]);
          stack.push_back({grouped[k], nd});
        }
    }
  }
};

InversePlan make_inverse_plan(const CayleyTree& t) {
  InversePlan plan;
  int n = t.size();
  constexpr int kAhead = 16;
  std::vector<std::uint64_t> twists;
  twists.reserve(n);
  for (int v = 2; v <= n; ++v) {
    if (v + kAhead <= n) __builtin_prefetch(&t.parents()[v + kAhead]);
    if (t.subtree_min(v) < t.parent_of(v))
      twists.push_back((std::uint64_t(t.subtree_min(v)) << 32) | std::uint32_t(v));
    else
      plan.piece_roots.push_back((std::uint64_t(t.parent_of(v)) << 32) | std::uint32_t(v));
  }
  radix_sort_pairs(twists, n);
  radix_sort_pairs(plan.piece_roots, n);
  const int n_twists = static_cast<int>(twists.size());
  // Re-key the min-sorted twists by parent; the second stable pass groups
  // them while keeping each group in min order.
  for (int i = 0; i < n_twists; ++i) {
    int v = static_cast<int>(twists[i] & 0xffffffffu);
    if (i + kAhead < n_twists)
      __builtin_prefetch(&t.parents()[static_cast<int>(twists[i + kAhead] & 0xffffffffu)]);
    twists[i] = (std::uint64_t(t.parent_of(v)) << 32) | std::uint32_t(v);
  }
  radix_sort_pairs(twists, n);

  plan.grouped.resize(n_twists);
  plan.span.assign(2 * n + 2, 0);
  plan.has_kids.assign((n + 64) / 64, 0);
  for (int i = 0; i < n_twists; ++i) {
    int p = static_cast<int>(twists[i] >> 32);
    plan.grouped[i] = static_cast<int>(twists[i] & 0xffffffffu);
    if (i == 0 || p != static_cast<int>(twists[i - 1] >> 32)) plan.span[2 * p] = i;
    plan.span[2 * p + 1] = i + 1;
    plan.has_kids[p >> 6] |= std::uint64_t(1) << (p & 63);
  }
  return plan;
}

}  // namespace

PlaneForest tau_inv_step3(const CayleyTree& t) {
  if (!t.structurally_valid()) throw std::invalid_argument("invalid Cayley tree");
  PlaneForest f;
  int n = t.size();
  if (n == 1) return f;
  f.reserve(2 * n, n);
  InversePlan plan = make_inverse_plan(t);
  std::vector<std::pair<int, int>> stack;
  for (std::uint64_t pr : plan.piece_roots) plan.build_piece(f, pr, stack);
  return f;
}

PlaneForest tau_inv_step2(PlaneForest f) {
  // The rightmost-first DFS pairs each traversed edge with the vertex visited
  // just before it, which has a local characterization: for the edge into c,
  // that vertex is the leftmost leaf of c's right sibling's subtree, or c's
  // parent when c is the rightmost child. Root edges (the leaf under each
  // piece root) carry no left label. Every node is handled independently, so
  // one sweep over the arena does the whole forest.
  int node_count = f.node_count();
  for (int c = 0; c < node_count; ++c) {
    int parent = f.parent(c);
    if (parent == PlaneForest::npos) continue;
    int sib = f.next_sibling(c);
    int end;
    if (sib != PlaneForest::npos) {
      int w = sib;
      while (f.first_child(w) != PlaneForest::npos) w = f.first_child(w);
      end = f.vertex_label(w);
    } else {
      end = f.vertex_label(parent);
    }
    f.set_right(c, 0, end);
    bool root_edge = f.parent(parent) == PlaneForest::npos && f.prev_sibling(c) == PlaneForest::npos;
    if (!root_edge) f.set_left(c, 0, end);
  }
  return f;
}

namespace {

// Reversed Step 1 for one tree rooted at `r` whose placeholder labels are in
// place. Edges sharing an eddy form one group: the edge into a vertex with a
// left sibling plus the first-child spine below it. The leftmost-first DFS
// meets each group as a consecutive run and groups die in LIFO order, so all
// of them live on one shared stack of resolved left labels, each group
// bounded below by its base (the eddy's right label as seed entry). A query
// (?,z) pops entries with end >= z (never again the first match of any later
// query) and adopts the first entry with a smaller end.
struct PlaceholderResolver {
  struct Entry {
    int x, y;
  };
  struct Event {
    int node;  // npos: truncate the shared stack to `base`
    int base;  // group base of the node's parent edge, or the truncation size
  };
  std::vector<Entry> shared;
  std::vector<Event> events;

  template <typename Record>
  void run(PlaneForest& f, int r, const Record& record) {
    shared.clear();
    events.clear();
    int leaf = f.first_child(r);
    f.set_right(leaf, f.vertex_label(leaf), f.right(leaf).second);
    record(f.right(leaf).second, Attachment::leaf(f.vertex_label(leaf)));

    for (int c = f.last_child(r); c != PlaneForest::npos; c = f.prev_sibling(c))
      events.push_back({c, 0});
    while (!events.empty()) {
      auto [c, inherited_base] = events.back();
      events.pop_back();
      if (c == PlaneForest::npos) {
        shared.resize(static_cast<std::size_t>(inherited_base));
        continue;
      }
      int base = inherited_base;
      if (c != leaf) {
        int z = f.right(c).second;
        int sib = f.prev_sibling(c);
        if (sib != PlaneForest::npos) {
          base = static_cast<int>(shared.size());
          // drop the group once this subtree is done
          events.push_back({PlaneForest::npos, base});
          auto [sx, sy] = f.right(sib);
          shared.push_back(Entry{sx, sy});
        }
        while (static_cast<int>(shared.size()) > base && shared.back().y >= z)
          shared.pop_back();
        if (static_cast<int>(shared.size()) == base)
          throw UnresolvedPlaceholder("no label with a smaller end is reachable");
        Entry e = shared.back();
        f.set_left(c, e.x, z);
        f.set_right(c, e.y, z);
        record(z, Attachment::triangle(e.x, e.y));
        shared.push_back(Entry{e.x, z});
      }
      for (int d = f.last_child(c); d != PlaneForest::npos; d = f.prev_sibling(d))
        events.push_back({d, base});
    }
  }
};

// Bookkeeping for reading the sequence off the resolved labels. For sizes
// whose three labels fit one word, records are buffered and radix-sorted by
// vertex so the sequence is written as one stream; otherwise they scatter
// directly. Coverage of {2..n} is checked either way.
struct SequenceSink {
  static constexpr int kFieldBits = 21;

  IncTreeSeq seq;
  std::vector<char> assigned;          // direct mode
  std::vector<std::uint64_t> records;  // packed mode
  bool packed;

  explicit SequenceSink(int n) : packed(n < (1 << kFieldBits)) {
    seq.n = n;
    seq.attach.assign(n > 1 ? n - 1 : 0, Attachment{});
    if (packed)
      records.reserve(n > 1 ? n - 1 : 0);
    else
      assigned.assign(n + 1, 0);
  }
  void record(int v, Attachment a) {
    if (v < 2 || v > seq.n)
      throw UnresolvedPlaceholder("end labels do not cover {2..n} exactly once");
    if (packed) {
      records.push_back((std::uint64_t(v) << (2 * kFieldBits)) |
                        (std::uint64_t(a.x) << kFieldBits) | std::uint64_t(a.y));
      return;
    }
    if (assigned[v])
      throw UnresolvedPlaceholder("end labels do not cover {2..n} exactly once");
    assigned[v] = 1;
    seq.attach[v - 2] = a;
  }
  IncTreeSeq finish() {
    if (packed) {
      constexpr std::uint64_t kMask = (std::uint64_t(1) << kFieldBits) - 1;
      if (static_cast<int>(records.size()) != std::max(0, seq.n - 1))
        throw UnresolvedPlaceholder("end labels do not cover {2..n} exactly once");
      radix_sort_by_key(records, 2 * kFieldBits, seq.n);
      for (int v = 2; v <= seq.n; ++v) {
        std::uint64_t rec = records[v - 2];
        if (static_cast<int>(rec >> (2 * kFieldBits)) != v)
          throw UnresolvedPlaceholder("end labels do not cover {2..n} exactly once");
        seq.attach[v - 2] =
            Attachment{static_cast<int>((rec >> kFieldBits) & kMask), static_cast<int>(rec & kMask)};
      }
      return std::move(seq);
    }
    for (int v = 2; v <= seq.n; ++v)
      if (!assigned[v]) throw UnresolvedPlaceholder("vertex missing from the label ends");
    return std::move(seq);
  }
};

}  // namespace

IncTreeSeq tau_inv_step1(PlaneForest f) {
  int n = f.node_count() - static_cast<int>(f.roots().size()) + 1;
  SequenceSink sink(n);
  PlaceholderResolver resolver;
  resolver.shared.reserve(f.node_count());
  resolver.events.reserve(f.node_count() + 8);
  for (int r : f.roots())
    resolver.run(f, r, [&](int v, Attachment a) { sink.record(v, a); });
  return sink.finish();
}

IncTreeSeq tau_inverse(const CayleyTree& t) {
  // Streamed composition of the three reversed steps: pieces are independent,
  // so each one is built, placeholder-labeled and resolved inside a small
  // reused arena instead of materializing the whole forest three times. The
  // materialized step functions above compute the same map (checked against
  // this path exhaustively in the tests).
  if (!t.structurally_valid()) throw std::invalid_argument("invalid Cayley tree");
  int n = t.size();
  SequenceSink sink(n);
  if (n == 1) return sink.finish();
  InversePlan plan = make_inverse_plan(t);
  PlaneForest piece;
  std::vector<std::pair<int, int>> build_stack;
  PlaceholderResolver resolver;
  for (std::uint64_t pr : plan.piece_roots) {
    piece.clear();
    plan.build_piece(piece, pr, build_stack);
    piece = tau_inv_step2(std::move(piece));
    resolver.run(piece, 0, [&](int v, Attachment a) { sink.record(v, a); });
  }
  return sink.finish();
}

}  // namespace twistree
