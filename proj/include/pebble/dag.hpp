#pragma once

// Immutable DAG model shared by the whole toolkit: dense 1-based node ids,
// designated sources/targets, optional per-node labels carrying gadget
// provenance, JSON interchange and DOT export.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pebble {

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct Dag {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // sorted, unique, u != v
  std::vector<int> sources;                // sorted
  std::vector<int> targets;                // sorted
  bool max_indegree_2 = false;
  std::map<int, std::string> labels;

  // adjacency, index 1..n ([0] unused)
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;

  bool has_node(int v) const { return v >= 1 && v <= n; }

  const std::vector<int>& predecessors(int v) const {
    if (!has_node(v)) throw InputError("unknown node id " + std::to_string(v));
    return preds[v];
  }
  const std::vector<int>& successors(int v) const {
    if (!has_node(v)) throw InputError("unknown node id " + std::to_string(v));
    return succs[v];
  }
  bool is_target(int v) const {
    return std::binary_search(targets.begin(), targets.end(), v);
  }
  // The games treat indegree-0 nodes as sources; for valid graphs the
  // designated source set is exactly a subset of these with indegree 0.
  bool indegree_zero(int v) const { return preds[v].empty(); }
};

inline bool operator==(const Dag& a, const Dag& b) {
  return a.n == b.n && a.edges == b.edges && a.sources == b.sources &&
         a.targets == b.targets && a.max_indegree_2 == b.max_indegree_2 &&
         a.labels == b.labels;
}

// Normalizing constructor used by generators and builders: deduplicates
// edges (E is a set), sorts everything, builds adjacency. Structural
// nonsense (bad ids, self-loops) is rejected outright.
inline Dag make_dag(int n, std::vector<std::pair<int, int>> edges,
                    std::vector<int> sources, std::vector<int> targets,
                    bool max_indegree_2 = false,
                    std::map<int, std::string> labels = {}) {
  if (n < 1) throw InputError("node count must be positive");
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw InputError("edge endpoint out of range: (" + std::to_string(u) +
                       "," + std::to_string(v) + ")");
    if (u == v) throw InputError("self-loop on node " + std::to_string(u));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (int s : sources)
    if (s < 1 || s > n) throw InputError("source id out of range");
  for (int t : targets)
    if (t < 1 || t > n) throw InputError("target id out of range");
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (auto& [id, tag] : labels) {
    (void)tag;
    if (id < 1 || id > n) throw InputError("label id out of range");
  }

  Dag d;
  d.n = n;
  d.edges = std::move(edges);
  d.sources = std::move(sources);
  d.targets = std::move(targets);
  d.max_indegree_2 = max_indegree_2;
  d.labels = std::move(labels);
  d.preds.assign(n + 1, {});
  d.succs.assign(n + 1, {});
  for (auto [u, v] : d.edges) {
    d.preds[v].push_back(u);
    d.succs[u].push_back(v);
  }
  for (int v = 1; v <= n; ++v) {
    std::sort(d.preds[v].begin(), d.preds[v].end());
    std::sort(d.succs[v].begin(), d.succs[v].end());
  }
  return d;
}

inline const std::vector<int>& predecessors(const Dag& d, int v) {
  return d.predecessors(v);
}

// Deterministic topological order (smallest id first); nullopt on a cycle.
inline std::optional<std::vector<int>> topological_order(const Dag& d) {
  std::vector<int> indeg(d.n + 1, 0);
  for (int v = 1; v <= d.n; ++v) indeg[v] = (int)d.preds[v].size();
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 1; v <= d.n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(d.n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : d.succs[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if ((int)order.size() != d.n) return std::nullopt;
  return order;
}

struct ValidationReport {
  bool ok = true;
  // (rule, offending node/edge rendered as text)
  std::vector<std::pair<std::string, std::string>> violations;

  void add(const std::string& rule, const std::string& where) {
    ok = false;
    violations.emplace_back(rule, where);
  }
};

inline ValidationReport validate(const Dag& d) {
  ValidationReport r;
  if (!topological_order(d)) r.add("acyclic", "graph contains a cycle");
  for (int s : d.sources)
    if (!d.preds[s].empty())
      r.add("source-indegree-0", "v" + std::to_string(s));
  for (int t : d.targets)
    if (!d.succs[t].empty())
      r.add("target-outdegree-0", "v" + std::to_string(t));
  if (d.max_indegree_2) {
    for (int v = 1; v <= d.n; ++v)
      if (d.preds[v].size() > 2)
        r.add("max-indegree-2", "v" + std::to_string(v));
  }
  // duplicate edges / self loops cannot survive make_dag; recheck anyway so
  // hand-constructed Dag values are also covered
  for (size_t i = 1; i < d.edges.size(); ++i)
    if (d.edges[i] == d.edges[i - 1])
      r.add("no-duplicate-edges", "(" + std::to_string(d.edges[i].first) +
                                      "," + std::to_string(d.edges[i].second) +
                                      ")");
  for (auto [u, v] : d.edges)
    if (u == v) r.add("no-self-loops", "v" + std::to_string(u));
  return r;
}

// ---- interchange format -------------------------------------------------

inline constexpr int kInterchangeVersion = 1;

inline std::string to_interchange(const Dag& d) {
  nlohmann::json j;
  j["version"] = kInterchangeVersion;
  j["n"] = d.n;
  auto& je = j["edges"] = nlohmann::json::array();
  for (auto [u, v] : d.edges) je.push_back({u, v});
  j["sources"] = d.sources;
  j["targets"] = d.targets;
  j["flags"] = {{"max_indegree_2", d.max_indegree_2}};
  auto& jl = j["labels"] = nlohmann::json::object();
  for (auto& [id, tag] : d.labels) jl[std::to_string(id)] = tag;
  return j.dump(2);
}

inline Dag from_interchange(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed graph document: ") + e.what());
  }
  if (!j.is_object()) throw InputError("graph document must be an object");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw InputError("missing schema version");
  if (j["version"].get<int>() != kInterchangeVersion)
    throw InputError("unsupported schema version " + j["version"].dump());
  for (const char* key : {"n", "edges", "sources", "targets"})
    if (!j.contains(key))
      throw InputError(std::string("missing field '") + key + "'");

  int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw InputError("edge entries must be [u,v] pairs");
    std::pair<int, int> p{e[0].get<int>(), e[1].get<int>()};
    if (!seen.insert(p).second)
      throw InputError("duplicate edge (" + std::to_string(p.first) + "," +
                       std::to_string(p.second) + ")");
    edges.push_back(p);
  }
  std::vector<int> sources = j["sources"].get<std::vector<int>>();
  std::vector<int> targets = j["targets"].get<std::vector<int>>();
  bool flag = false;
  if (j.contains("flags") && j["flags"].contains("max_indegree_2"))
    flag = j["flags"]["max_indegree_2"].get<bool>();
  std::map<int, std::string> labels;
  if (j.contains("labels"))
    for (auto& [key, val] : j["labels"].items())
      labels[std::stoi(key)] = val.get<std::string>();
  return make_dag(n, std::move(edges), std::move(sources), std::move(targets),
                  flag, std::move(labels));
}

inline std::string to_dot(const Dag& d) {
  std::string out = "digraph pebble {\n  rankdir=BT;\n";
  for (int v = 1; v <= d.n; ++v) {
    out += "  v" + std::to_string(v);
    std::string attrs;
    if (std::binary_search(d.sources.begin(), d.sources.end(), v))
      attrs += "shape=invtriangle,style=filled,fillcolor=lightgrey";
    else if (d.is_target(v))
      attrs += "shape=doublecircle,style=filled,fillcolor=gold";
    auto it = d.labels.find(v);
    if (it != d.labels.end()) {
      if (!attrs.empty()) attrs += ",";
      attrs += "label=\"v" + std::to_string(v) + "\\n" + it->second + "\"";
    }
    if (!attrs.empty()) out += " [" + attrs + "]";
    out += ";\n";
  }
  for (auto [u, v] : d.edges)
    out += "  v" + std::to_string(u) + " -> v" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

// Re-target a graph (used for road-graph output subsets). New targets must
// already have outdegree 0.
inline Dag with_targets(const Dag& d, std::vector<int> targets) {
  for (int t : targets) {
    if (t < 1 || t > d.n) throw InputError("target id out of range");
    if (!d.succs[t].empty())
      throw InputError("node v" + std::to_string(t) +
                       " has successors and cannot be a target");
  }
  return make_dag(d.n, d.edges, d.sources, std::move(targets),
                  d.max_indegree_2, d.labels);
}

}  // namespace pebble
