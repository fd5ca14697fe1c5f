#pragma once

#include <string>
#include <vector>

namespace twistree {

// An edge into subtree S from vertex x is Increasing iff x < min(S), a Twist
// iff min(S) < x; labels are distinct so exactly one holds.
enum class EdgeClass { Increasing, Twist };

// Labeled tree on {1..n} rooted at vertex 1, stored as a parent map.
// parent()[v] is v's parent for v in 2..n; parent()[1] == 0; index 0 unused.
// Subtree minima are computed once at construction (single pass over a BFS
// order) so edge classification is O(1) and contention-free afterwards.
class CayleyTree {
 public:
  CayleyTree();  // single vertex
  CayleyTree(int n, std::vector<int> parent);

  // Fast path for callers that already hold a root-first topological order
  // (every vertex after its parent): skips adjacency construction and fills
  // the minima memo in one reverse pass. The order must cover {1..n}; with
  // check == false the caller vouches for that.
  static CayleyTree from_oriented(int n, std::vector<int> parent, const std::vector<int>& order,
                                  bool check = true);

  int size() const { return n_; }
  int parent_of(int v) const { return parent_[v]; }
  const std::vector<int>& parents() const { return parent_; }

  // False when the parent map is not a tree rooted at 1 (see validate_cayley
  // for the detailed report). Query operations below require a valid tree.
  bool structurally_valid() const { return valid_; }

  int subtree_min(int v) const {
    if (!valid_ || v < 1 || v > n_) fail_invalid("subtree_min");
    return min_[v];
  }
  EdgeClass classify_edge(int child) const;  // throws RootHasNoEdge for child==1
  int count_twists() const;

  // Child lists derived on demand, each in increasing label order.
  std::vector<std::vector<int>> children() const;

  bool operator==(const CayleyTree& o) const { return n_ == o.n_ && parent_ == o.parent_; }

 private:
  void analyze();
  [[noreturn]] static void fail_invalid(const char* op);

  int n_ = 1;
  std::vector<int> parent_;
  std::vector<int> min_;
  bool valid_ = true;
};

struct CayleyReport {
  enum class Error { None, CycleDetected, BadLabelSet };
  bool ok = true;
  Error error = Error::None;
  int vertex = 0;
  std::string detail;
};

CayleyReport validate_cayley(const CayleyTree& t);

inline int subtree_min(const CayleyTree& t, int v) { return t.subtree_min(v); }
inline EdgeClass classify_edge(const CayleyTree& t, int child) { return t.classify_edge(child); }
inline int count_twists(const CayleyTree& t) { return t.count_twists(); }

}  // namespace twistree
