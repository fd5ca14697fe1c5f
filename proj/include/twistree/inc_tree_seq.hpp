#pragma once

#include <string>
#include <utility>
#include <vector>

namespace twistree {

// One construction step of an increasing 1,2-tree: vertex v joins either as a
// leaf hanging off x, or as the apex of a triangle over the existing edge {x,y}.
// y == 0 encodes the leaf case.
struct Attachment {
  int x = 0;
  int y = 0;

  static Attachment leaf(int x) { return {x, 0}; }
  static Attachment triangle(int x, int y) { return {x, y}; }
  bool is_triangle() const { return y != 0; }

  bool operator==(const Attachment&) const = default;
};

// Construction sequence of an increasing 1,2-tree. attach[i] describes vertex
// i+2, so attach.size() == n-1. The sequence is the canonical representation;
// the labeled graph is derived from it.
struct IncTreeSeq {
  int n = 1;
  std::vector<Attachment> attach;

  bool operator==(const IncTreeSeq&) const = default;
};

struct Inc12Report {
  enum class Error { None, MalformedSequence, CliqueViolation };
  bool ok = true;
  Error error = Error::None;
  int vertex = 0;    // first violating vertex, 0 if not applicable
  std::string detail;
};

Inc12Report validate_inc12(const IncTreeSeq& seq);

// Edge list of the induced graph, in construction order, each edge as (lo, hi).
// Assumes a valid sequence.
std::vector<std::pair<int, int>> inc12_edges(const IncTreeSeq& seq);

// Number of Triangle entries; equals m - n + 1 of the induced graph.
int inc12_triangle_count(const IncTreeSeq& seq);

}  // namespace twistree
