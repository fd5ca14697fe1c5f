#include "twistree/plane_forest.hpp"

#include "twistree/errors.hpp"

namespace twistree {

int PlaneForest::split_edge_above(int w) {
  int m = new_node();
  Node& nw = nodes_[w];
  Node& nm = nodes_[m];
  int u = nw.parent;
  nm.parent = u;
  nm.prev = nw.prev;
  nm.next = nw.next;
  if (nw.prev != npos)
    nodes_[nw.prev].next = m;
  else if (u != npos)
    nodes_[u].first = m;
  if (nw.next != npos)
    nodes_[nw.next].prev = m;
  else if (u != npos)
    nodes_[u].last = m;
  nm.first = nm.last = w;
  nw.parent = m;
  nw.prev = nw.next = npos;
  return m;
}

void PlaneForest::insert_right_sibling_with_transfer(int w, int node) {
  int u = nodes_[w].parent;
  int moved = nodes_[w].next;
  Node& nn = nodes_[node];
  nn.parent = u;
  nn.prev = w;
  nn.next = npos;
  nn.first = moved;
  nn.last = (moved == npos) ? npos : nodes_[u].last;
  if (moved != npos) {
    nodes_[moved].prev = npos;
    for (int m = moved; m != npos; m = nodes_[m].next) nodes_[m].parent = node;
  }
  nodes_[w].next = node;
  nodes_[u].last = node;
}

int PlaneForest::eddy(int v) const {
  int a = v;
  while (a != npos && nodes_[a].prev == npos) a = nodes_[a].parent;
  if (a == npos) throw EddyUndefined("vertex lies on the leftmost branch from the root");
  return nodes_[a].prev;
}

}  // namespace twistree
