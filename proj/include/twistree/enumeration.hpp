#pragma once

#include <functional>
#include <vector>

#include "twistree/cayley_tree.hpp"
#include "twistree/inc_tree_seq.hpp"

namespace twistree {

inline constexpr int kDefaultEnumerationCap = 9;

// Children of a node in the generating tree of increasing 1,2-trees: attach
// vertex n+1 as a leaf on each vertex, then as a triangle on each edge (edges
// in construction order). A size-n object has exactly n + m successors.
std::vector<IncTreeSeq> successors_inc12(const IncTreeSeq& seq);

// Children in the generating tree of Cayley trees (Shor's decomposition).
// Method 1 attaches n as a leaf under each k (twist count unchanged); method 2
// picks a non-root k whose twist-children subtrees, ordered by increasing
// minima, are T_1..T_b: for each a in 0..b, n replaces k, k becomes n's child,
// T_1..T_a stay under n and the remaining subtrees move under k (one new
// twist). Emission order: method 1 by k, then method 2 by k then a.
std::vector<CayleyTree> successors_cayley(const CayleyTree& t);

// Depth-first streams over the generating trees; each size-n object is
// visited exactly once, in a deterministic order. Throws ResourceBound when
// n exceeds the cap.
void enumerate_inc12(int n, const std::function<void(const IncTreeSeq&)>& visit,
                     int cap = kDefaultEnumerationCap);
void enumerate_cayley(int n, const std::function<void(const CayleyTree&)>& visit,
                      int cap = kDefaultEnumerationCap);

}  // namespace twistree
