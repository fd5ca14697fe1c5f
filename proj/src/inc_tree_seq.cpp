#include "twistree/inc_tree_seq.hpp"

#include <cstdint>
#include <unordered_set>

namespace twistree {

namespace {
std::uint64_t edge_key(int x, int y) {
  return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y);
}
}  // namespace

Inc12Report validate_inc12(const IncTreeSeq& seq) {
  Inc12Report r;
  if (seq.n < 1) {
    r.ok = false;
    r.error = Inc12Report::Error::MalformedSequence;
    r.detail = "vertex count must be at least 1";
    return r;
  }
  if (static_cast<int>(seq.attach.size()) != seq.n - 1) {
    r.ok = false;
    r.error = Inc12Report::Error::MalformedSequence;
    r.detail = "attachment list must have n-1 entries";
    return r;
  }
  std::unordered_set<std::uint64_t> edges;
  for (int v = 2; v <= seq.n; ++v) {
    const Attachment& a = seq.attach[v - 2];
    if (!a.is_triangle()) {
      if (a.x < 1 || a.x >= v) {
        r.ok = false;
        r.error = Inc12Report::Error::CliqueViolation;
        r.vertex = v;
        r.detail = "leaf attachment label out of range";
        return r;
      }
      edges.insert(edge_key(a.x, v));
    } else {
      if (a.x < 1 || a.x >= a.y || a.y >= v) {
        r.ok = false;
        r.error = Inc12Report::Error::CliqueViolation;
        r.vertex = v;
        r.detail = "triangle attachment label out of range";
        return r;
      }
      if (!edges.contains(edge_key(a.x, a.y))) {
        r.ok = false;
        r.error = Inc12Report::Error::CliqueViolation;
        r.vertex = v;
        r.detail = "triangle attachment references an absent edge";
        return r;
      }
      edges.insert(edge_key(a.x, v));
      edges.insert(edge_key(a.y, v));
    }
  }
  return r;
}

std::vector<std::pair<int, int>> inc12_edges(const IncTreeSeq& seq) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * seq.attach.size());
  for (int v = 2; v <= seq.n; ++v) {
    const Attachment& a = seq.attach[v - 2];
    edges.emplace_back(a.x, v);
    if (a.is_triangle()) edges.emplace_back(a.y, v);
  }
  return edges;
}

int inc12_triangle_count(const IncTreeSeq& seq) {
  int count = 0;
  for (const Attachment& a : seq.attach)
    if (a.is_triangle()) ++count;
  return count;
}

}  // namespace twistree
