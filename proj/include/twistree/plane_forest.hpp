#pragma once

#include <utility>
#include <vector>

namespace twistree {

// Ordered forest whose edges carry an optional left label and an optional
// right label (pairs of vertex labels), plus an optional vertex label per
// node. The edge into a node stores its labels on that node; roots carry no
// edge labels. Label coordinates are >= 1; 0 means absent, and a right label
// (0, y) is a placeholder "(?, y)" used by the reversed construction.
//
// Children form a doubly linked sibling list, so appending on the right,
// splitting an edge in the middle and inserting a right sibling that adopts
// the displaced subtrees are all cheap; the last of these re-parents the
// moved block, which amortizes to O(n) over a whole construction.
class PlaneForest {
 public:
  static constexpr int npos = -1;

  int new_node() {
    nodes_.emplace_back();
    labels_.emplace_back();
    return static_cast<int>(nodes_.size()) - 1;
  }
  void reserve(int nodes, int trees) {
    nodes_.reserve(nodes);
    labels_.reserve(nodes);
    roots_.reserve(trees);
  }
  void clear() {
    nodes_.clear();
    labels_.clear();
    roots_.clear();
  }
  void add_root(int v) { roots_.push_back(v); }

  void append_child(int u, int c) {
    Node& nu = nodes_[u];
    Node& nc = nodes_[c];
    nc.parent = u;
    nc.prev = nu.last;
    nc.next = npos;
    if (nu.last != npos)
      nodes_[nu.last].next = c;
    else
      nu.first = c;
    nu.last = c;
  }
  // Inserts a fresh node between w and its parent; the middle node takes w's
  // sibling position and w (keeping its own children) becomes its only child.
  // Returns the middle node. Edge labels are left untouched: the edge into w
  // still carries w's labels, the new edge into the middle carries none.
  int split_edge_above(int w);
  // Inserts `node` as w's immediate right sibling; every subtree that was on
  // the right of w is re-parented below `node`, order preserved.
  void insert_right_sibling_with_transfer(int w, int node);

  int parent(int v) const { return nodes_[v].parent; }
  int prev_sibling(int v) const { return nodes_[v].prev; }
  int next_sibling(int v) const { return nodes_[v].next; }
  int first_child(int v) const { return nodes_[v].first; }
  int last_child(int v) const { return nodes_[v].last; }
  bool is_leaf(int v) const { return nodes_[v].first == npos; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<int>& roots() const { return roots_; }
  std::vector<int>& roots() { return roots_; }

  bool has_left(int v) const { return labels_[v].ly != 0; }
  bool has_right(int v) const { return labels_[v].ry != 0; }
  std::pair<int, int> left(int v) const { return {labels_[v].lx, labels_[v].ly}; }
  std::pair<int, int> right(int v) const { return {labels_[v].rx, labels_[v].ry}; }
  void set_left(int v, int x, int y) { labels_[v].lx = x; labels_[v].ly = y; }
  void set_right(int v, int x, int y) { labels_[v].rx = x; labels_[v].ry = y; }
  void clear_left(int v) { labels_[v].lx = 0; labels_[v].ly = 0; }

  int vertex_label(int v) const { return labels_[v].vlabel; }
  void set_vertex_label(int v, int label) { labels_[v].vlabel = label; }

  // Edge from the immediate left sibling of the youngest ascendant of v
  // (v included) having left siblings, to that sibling's parent; returned as
  // the node the edge leads into. Throws EddyUndefined when v lies on the
  // leftmost branch from its root.
  int eddy(int v) const;

 private:
  // Structure and labels live in parallel arrays so that pure traversals pull
  // half the memory per node.
  struct Node {
    int parent = npos, prev = npos, next = npos, first = npos, last = npos;
  };
  struct EdgeLabels {
    int lx = 0, ly = 0, rx = 0, ry = 0;
    int vlabel = 0;
  };
  std::vector<Node> nodes_;
  std::vector<EdgeLabels> labels_;
  std::vector<int> roots_;
};

inline int eddy(const PlaneForest& f, int v) { return f.eddy(v); }

}  // namespace twistree
