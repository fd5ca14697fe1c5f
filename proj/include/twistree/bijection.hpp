#pragma once

#include <functional>
#include <vector>

#include "twistree/cayley_tree.hpp"
#include "twistree/inc_tree_seq.hpp"
#include "twistree/plane_forest.hpp"

namespace twistree {

// Visit order of a depth-first traversal from `root` favoring the rightmost
// unvisited edge at each step. vertices[0] is the root; edges[k] is the node
// the (k+1)-th traversed edge leads into, so edges[k] == vertices[k+1]. The
// endpoint of the root edge comes last.
struct DfsOrder {
  std::vector<int> vertices;
  std::vector<int> edges;
};

DfsOrder rightmost_dfs(const PlaneForest& f, int root);

// Called after each vertex of the sequence has been replayed, with the forest
// in its current intermediate state.
using StepObserver = std::function<void(int vertex, const PlaneForest&)>;

// Step 1: replay the construction sequence into a plane forest labeled by the
// edges of the input graph. Leaf(x) at v opens a new single-edge tree with
// right label (x,v). Triangle(x,y) at v locates the unique edge carrying
// (x,y): on the left it splits that edge, the lower half taking left (x,v)
// and right (y,v); on the right it inserts a sibling edge carrying those
// labels, adopting the subtrees displaced to its right. Trees end up ordered
// by (minimum label, end label of the root edge).
PlaneForest tau_step1(const IncTreeSeq& seq, const StepObserver& observer = {});

// Step 2: assign vertex labels. Per tree, the leaf under the root edge takes
// the first coordinate of the root edge's right label; the rightmost-first
// DFS then pairs each visited vertex with the end label of the next traversed
// edge.
PlaneForest tau_step2(PlaneForest f);

// Step 3: drop edge labels and planarity, merge equal-labeled vertices.
CayleyTree tau_step3(const PlaneForest& f);

CayleyTree tau(const IncTreeSeq& seq);

// Single-pass variant maintaining vertex labels directly; stripping edge
// labels and planarity from its plane tree yields exactly tau(seq).
CayleyTree tau_express(const IncTreeSeq& seq);

// Reversed Step 3: cut every increasing edge (duplicating its upper endpoint
// as a pendant leaf), discard the isolated vertex-1 piece, root each piece at
// the lower endpoint of its cut edge and order children everywhere by
// increasing subtree minima (bucket pass, O(n)).
PlaneForest tau_inv_step3(const CayleyTree& t);

// Reversed Step 2: per tree, the rightmost-first DFS names vertices and
// edges; edge e_k receives left and right placeholder labels (?, label(v_k)),
// the root edge only the right one.
PlaneForest tau_inv_step2(PlaneForest f);

// Reversed Step 1: fix the root edge's right label from the leftmost leaf,
// then resolve every placeholder in leftmost-first DFS order by the nearest
// smaller end label on the path towards the edge's eddy (per-eddy monotone
// stacks, O(n) total), and read off the construction sequence.
IncTreeSeq tau_inv_step1(PlaneForest f);

IncTreeSeq tau_inverse(const CayleyTree& t);

}  // namespace twistree
