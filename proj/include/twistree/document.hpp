#pragma once

#include <string>

#include "twistree/cayley_tree.hpp"
#include "twistree/inc_tree_seq.hpp"

namespace twistree {

// Wire format for a single tree, one JSON object per line. Vertices are
// 1-based to match the labels; the root's parent is encoded as 0.
//   {"family":"cayley","n":4,"parent":[0,3,1,...]}   parent[i] is vertex i+1's parent
//   {"family":"inc12","n":3,"attach":[[1],[1,2]]}    attach[i] is vertex i+2's attachment
struct TreeDocument {
  enum class Family { Cayley, Inc12 };
  Family family = Family::Cayley;
  int n = 1;
  std::vector<int> parent;        // cayley payload, size n
  std::vector<Attachment> attach; // inc12 payload, size n-1
};

// Throws ParseError on malformed input. Attachment pairs are canonicalized
// to increasing order; everything else is reported by the validators.
TreeDocument parse_document(const std::string& line);

// Canonical single-line serialization; parse/serialize is idempotent.
std::string serialize(const TreeDocument& doc);

TreeDocument make_document(const CayleyTree& t);
TreeDocument make_document(const IncTreeSeq& seq);

CayleyTree to_cayley(const TreeDocument& doc);
IncTreeSeq to_inc12(const TreeDocument& doc);

// DOT rendering: a digraph rooted at 1 for Cayley trees, twist edges dashed;
// the underlying labeled graph for increasing 1,2-trees.
std::string export_dot(const TreeDocument& doc);

}  // namespace twistree
