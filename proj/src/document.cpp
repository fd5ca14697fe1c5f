#include "twistree/document.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "twistree/errors.hpp"

namespace twistree {

TreeDocument parse_document(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (!j.contains("family") || !j["family"].is_string())
    throw ParseError("missing string field 'family'");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("missing integer field 'n'");

  TreeDocument doc;
  doc.n = j["n"].get<int>();
  std::string family = j["family"].get<std::string>();
  if (family == "cayley") {
    doc.family = TreeDocument::Family::Cayley;
    if (!j.contains("parent") || !j["parent"].is_array())
      throw ParseError("cayley document needs an integer array 'parent'");
    for (const auto& v : j["parent"]) {
      if (!v.is_number_integer()) throw ParseError("'parent' entries must be integers");
      doc.parent.push_back(v.get<int>());
    }
    if (static_cast<int>(doc.parent.size()) != doc.n)
      throw ParseError("'parent' must have exactly n entries");
  } else if (family == "inc12") {
    doc.family = TreeDocument::Family::Inc12;
    if (!j.contains("attach") || !j["attach"].is_array())
      throw ParseError("inc12 document needs an array 'attach'");
    for (const auto& entry : j["attach"]) {
      if (!entry.is_array() || entry.empty() || entry.size() > 2)
        throw ParseError("'attach' entries must be [x] or [x,y]");
      for (const auto& v : entry)
        if (!v.is_number_integer()) throw ParseError("'attach' labels must be integers");
      if (entry.size() == 1) {
        doc.attach.push_back(Attachment::leaf(entry[0].get<int>()));
      } else {
        int x = entry[0].get<int>();
        int y = entry[1].get<int>();
        if (x > y) std::swap(x, y);
        doc.attach.push_back(Attachment::triangle(x, y));
      }
    }
    if (static_cast<int>(doc.attach.size()) != std::max(0, doc.n - 1))
      throw ParseError("'attach' must have exactly n-1 entries");
  } else {
    throw ParseError("unknown family '" + family + "'");
  }
  return doc;
}

std::string serialize(const TreeDocument& doc) {
  std::ostringstream os;
  if (doc.family == TreeDocument::Family::Cayley) {
    os << "{\"family\":\"cayley\",\"n\":" << doc.n << ",\"parent\":[";
    for (std::size_t i = 0; i < doc.parent.size(); ++i) {
      if (i) os << ',';
      os << doc.parent[i];
    }
    os << "]}";
  } else {
    os << "{\"family\":\"inc12\",\"n\":" << doc.n << ",\"attach\":[";
    for (std::size_t i = 0; i < doc.attach.size(); ++i) {
      if (i) os << ',';
      const Attachment& a = doc.attach[i];
      if (a.is_triangle())
        os << '[' << a.x << ',' << a.y << ']';
      else
        os << '[' << a.x << ']';
    }
    os << "]}";
  }
  return os.str();
}

TreeDocument make_document(const CayleyTree& t) {
  TreeDocument doc;
  doc.family = TreeDocument::Family::Cayley;
  doc.n = t.size();
  doc.parent.assign(t.parents().begin() + 1, t.parents().end());
  return doc;
}

TreeDocument make_document(const IncTreeSeq& seq) {
  TreeDocument doc;
  doc.family = TreeDocument::Family::Inc12;
  doc.n = seq.n;
  doc.attach = seq.attach;
  return doc;
}

CayleyTree to_cayley(const TreeDocument& doc) {
  // parent[1] must be 0 in the document; CayleyTree::structurally_valid and
  // validate_cayley report anything else.
  std::vector<int> parent(1, 0);
  parent.insert(parent.end(), doc.parent.begin(), doc.parent.end());
  return CayleyTree(doc.n, std::move(parent));
}

IncTreeSeq to_inc12(const TreeDocument& doc) {
  IncTreeSeq seq;
  seq.n = doc.n;
  seq.attach = doc.attach;
  return seq;
}

std::string export_dot(const TreeDocument& doc) {
  std::ostringstream os;
  if (doc.family == TreeDocument::Family::Cayley) {
    CayleyTree t = to_cayley(doc);
    os << "digraph cayley {\n";
    for (int v = 1; v <= t.size(); ++v) os << "  " << v << ";\n";
    for (int v = 2; v <= t.size(); ++v) {
      os << "  " << t.parent_of(v) << " -> " << v;
      if (t.classify_edge(v) == EdgeClass::Twist) os << " [style=dashed]";
      os << ";\n";
    }
    os << "}\n";
  } else {
    IncTreeSeq seq = to_inc12(doc);
    os << "graph inc12 {\n";
    for (int v = 1; v <= seq.n; ++v) os << "  " << v << ";\n";
    for (auto [a, b] : inc12_edges(seq)) os << "  " << a << " -- " << b << ";\n";
    os << "}\n";
  }
  return os.str();
}

}  // namespace twistree
