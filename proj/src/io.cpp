#include "treecode/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace treecode::io {

namespace {

using nlohmann::json;

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s;
}

json parse(const std::string& text) {
  json j = json::parse(text);
  if (j.is_object() && j.contains("tree")) return j["tree"];  // sample wrapper
  return j;
}

std::vector<int> int_array(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing ") + key);
  return j.at(key).get<std::vector<int>>();
}

}  // namespace

std::string to_json(const RootedTree& t) {
  std::string s = "{\"n\":" + std::to_string(t.n) +
                  ",\"root\":" + std::to_string(t.root) + ",\"parent\":[";
  for (Vertex v = 1; v <= t.n; ++v) {
    if (v > 1) s += ",";
    s += std::to_string(t.parent[v]);
  }
  return s + "]}";
}

std::string to_json(const RootedForest& f) {
  std::string s = "{\"n\":" + std::to_string(f.n) + ",\"roots\":[";
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.roots[i]);
  }
  s += "],\"parent\":[";
  for (Vertex v = 1; v <= f.n; ++v) {
    if (v > 1) s += ",";
    s += std::to_string(f.parent[v]);
  }
  return s + "]}";
}

std::string to_json(const MarkedTree& mt) {
  std::string s = to_json(mt.tree);
  s.pop_back();  // strip '}'
  s += ",\"marks\":[";
  for (std::size_t i = 0; i < mt.marks.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mt.marks[i]);
  }
  return s + "]}";
}

namespace {

// JSON ids are tagged on both sides: internal 3 -> "i3", leaf 5 -> "l5"
std::string json_id(const DegreeTree& t, Vertex packed) {
  const VertexId v = t.unpack(packed);
  return (v.is_leaf() ? "l" : "i") + std::to_string(v.index);
}

}  // namespace

std::string to_json(const DegreeTree& t) {
  std::string s = "{\"degrees\":[" + join_ints(t.degrees.d) + "],\"root\":\"" +
                  json_id(t, t.root) + "\",\"parent\":{";
  bool first = true;
  for (Vertex v = 1; v <= t.vertex_count(); ++v) {
    if (v == t.root) continue;
    if (!first) s += ",";
    first = false;
    s += "\"" + json_id(t, v) + "\":\"" + json_id(t, t.parent[v]) + "\"";
  }
  return s + "}}";
}

std::string to_json(const CodingSequence& cs) {
  std::string s = "{\"context\":\"";
  switch (cs.context.kind) {
    case SequenceContext::Kind::Rooted:
      s += "rooted\",\"n\":" + std::to_string(cs.context.n);
      break;
    case SequenceContext::Kind::Unrooted:
      s += "unrooted\",\"n\":" + std::to_string(cs.context.n);
      if (cs.context.variant != 1)
        s += ",\"variant\":" + std::to_string(cs.context.variant);
      break;
    case SequenceContext::Kind::Marked:
      s += "marked\",\"n\":" + std::to_string(cs.context.n) +
           ",\"r\":" + std::to_string(cs.context.r);
      break;
    case SequenceContext::Kind::Forest:
      s += "forest\",\"n\":" + std::to_string(cs.context.n) + ",\"roots\":[" +
           join_ints(cs.context.roots) + "]";
      break;
    case SequenceContext::Kind::Degree:
      s += "degree\",\"degrees\":[" + join_ints(cs.context.degrees.d) + "]";
      break;
  }
  return s + ",\"seq\":[" + join_ints(cs.entries) + "]}";
}

std::string sample_wrapper(std::uint64_t seed, std::uint64_t stream,
                           const std::string& tree_json) {
  return "{\"seed\":" + std::to_string(seed) + ",\"stream\":" +
         std::to_string(stream) + ",\"tree\":" + tree_json + "}";
}

RootedTree tree_from_json(const std::string& text) {
  const json j = parse(text);
  RootedTree t;
  t.n = j.at("n").get<int>();
  t.root = j.at("root").get<int>();
  const auto par = int_array(j, "parent");
  if (static_cast<int>(par.size()) != t.n)
    throw std::invalid_argument("parent array must have n entries");
  t.parent.assign(t.n + 1, 0);
  for (int v = 1; v <= t.n; ++v) t.parent[v] = par[v - 1];
  require_valid(t);
  return t;
}

RootedForest forest_from_json(const std::string& text) {
  const json j = parse(text);
  RootedForest f;
  f.n = j.at("n").get<int>();
  f.roots = int_array(j, "roots");
  std::sort(f.roots.begin(), f.roots.end());
  const auto par = int_array(j, "parent");
  if (static_cast<int>(par.size()) != f.n)
    throw std::invalid_argument("parent array must have n entries");
  f.parent.assign(f.n + 1, 0);
  for (int v = 1; v <= f.n; ++v) f.parent[v] = par[v - 1];
  require_valid(f);
  return f;
}

MarkedTree marked_from_json(const std::string& text) {
  const json j = parse(text);
  MarkedTree mt;
  mt.tree = tree_from_json(text);
  mt.marks = int_array(j, "marks");
  return mt;
}

namespace {

Vertex packed_id(const std::string& s, int m) {
  if (s.empty()) throw std::invalid_argument("empty vertex id");
  if (s[0] == 'l') {
    const int j = std::stoi(s.substr(1));
    return m + j;
  }
  if (s[0] == 'i') return std::stoi(s.substr(1));
  return std::stoi(s);
}

}  // namespace

DegreeTree degree_tree_from_json(const std::string& text) {
  const json j = parse(text);
  DegreeTree t;
  t.degrees.d = int_array(j, "degrees");
  const int m = t.degrees.m();
  t.root = packed_id(j.at("root").get<std::string>(), m);
  t.parent.assign(t.vertex_count() + 1, 0);
  for (const auto& [key, value] : j.at("parent").items()) {
    const Vertex child = packed_id(key, m);
    if (child < 1 || child > t.vertex_count())
      throw std::invalid_argument("vertex id out of range: " + key);
    t.parent[child] = packed_id(value.get<std::string>(), m);
  }
  require_valid(t);
  return t;
}

CodingSequence sequence_from_json(const std::string& text) {
  const json j = json::parse(text);
  CodingSequence cs;
  const std::string kind = j.at("context").get<std::string>();
  if (kind == "rooted") {
    cs.context.kind = SequenceContext::Kind::Rooted;
    cs.context.n = j.at("n").get<int>();
  } else if (kind == "unrooted") {
    cs.context.kind = SequenceContext::Kind::Unrooted;
    cs.context.n = j.at("n").get<int>();
    cs.context.variant = j.contains("variant") ? j.at("variant").get<int>() : 1;
  } else if (kind == "marked") {
    cs.context.kind = SequenceContext::Kind::Marked;
    cs.context.n = j.at("n").get<int>();
    cs.context.r = j.at("r").get<int>();
  } else if (kind == "forest") {
    cs.context.kind = SequenceContext::Kind::Forest;
    cs.context.n = j.at("n").get<int>();
    cs.context.roots = int_array(j, "roots");
  } else if (kind == "degree") {
    cs.context.kind = SequenceContext::Kind::Degree;
    cs.context.degrees.d = int_array(j, "degrees");
  } else {
    throw std::invalid_argument("unknown context: " + kind);
  }
  cs.entries = int_array(j, "seq");
  return cs;
}

std::string to_text(const Code& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s;
}

Code code_from_text(const std::string& line) {
  Code v;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    try {
      v.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad sequence entry: " + tok);
    }
  }
  return v;
}

namespace {

std::string dot_header() { return "digraph tree {\n  node [shape=circle];\n"; }

}  // namespace

std::string to_dot(const RootedTree& t) {
  std::string s = dot_header();
  s += "  " + std::to_string(t.root) + " [shape=doublecircle];\n";
  for (Vertex v = 1; v <= t.n; ++v)
    if (t.parent[v] != 0)
      s += "  " + std::to_string(t.parent[v]) + " -> " + std::to_string(v) + ";\n";
  return s + "}\n";
}

std::string to_dot(const RootedForest& f) {
  std::string s = dot_header();
  for (Vertex r : f.roots) s += "  " + std::to_string(r) + " [shape=doublecircle];\n";
  for (Vertex v = 1; v <= f.n; ++v)
    if (f.parent[v] != 0)
      s += "  " + std::to_string(f.parent[v]) + " -> " + std::to_string(v) + ";\n";
  return s + "}\n";
}

std::string to_dot(const DegreeTree& t) {
  std::string s = dot_header();
  s += "  // discovery order:";
  for (const VertexId& v : discovery_order(t)) s += " " + v.to_string();
  s += "\n  " + t.unpack(t.root).to_string() + " [shape=doublecircle];\n";
  for (Vertex v = 1; v <= t.vertex_count(); ++v)
    if (v != t.root)
      s += "  " + t.unpack(t.parent[v]).to_string() + " -> " +
           t.unpack(v).to_string() + ";\n";
  return s + "}\n";
}

std::string to_edgelist(const RootedTree& t) {
  std::string s = "root " + std::to_string(t.root) + "\n";
  for (auto [a, b] : edge_set(t))
    s += std::to_string(a) + " " + std::to_string(b) + "\n";
  return s;
}

std::string to_edgelist(const RootedForest& f) {
  std::string s = "roots";
  for (Vertex r : f.roots) s += " " + std::to_string(r);
  s += "\n";
  for (auto [a, b] : edge_set(f))
    s += std::to_string(a) + " " + std::to_string(b) + "\n";
  return s;
}

std::string to_edgelist(const DegreeTree& t) {
  std::string s = "root " + t.unpack(t.root).to_string() + "\n";
  for (Vertex v = 1; v <= t.vertex_count(); ++v)
    if (v != t.root)
      s += t.unpack(t.parent[v]).to_string() + " " + t.unpack(v).to_string() + "\n";
  return s;
}

namespace {

std::string format_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

}  // namespace

std::string to_csv(const EmpiricalDist& dist) {
  std::string s = "value,count,prob\n";
  for (auto [value, count] : dist.counts) {
    s += std::to_string(value) + "," + std::to_string(count) + "," +
         format_prob(static_cast<double>(count) / static_cast<double>(dist.total)) +
         "\n";
  }
  return s;
}

std::string to_csv(const Pmf& pmf) {
  std::string s = "value,count,prob\n";
  for (std::size_t i = 0; i < pmf.values.size(); ++i)
    s += std::to_string(pmf.values[i]) + ",0," + format_prob(pmf.probs[i]) + "\n";
  return s;
}

std::string to_json(const DominanceReport& rep) {
  return "{\"max_violation\":" + format_prob(rep.max_violation) +
         ",\"epsilon\":" + format_prob(rep.epsilon) + ",\"dominates_within_margin\":" +
         (rep.dominates_within_margin ? "true" : "false") +
         ",\"total_a\":" + std::to_string(rep.total_a) +
         ",\"total_b\":" + std::to_string(rep.total_b) + "}";
}

}  // namespace treecode::io
