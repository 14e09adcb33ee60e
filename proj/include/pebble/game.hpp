#pragma once

// Executable semantics of the standard (black) and black-white pebble games:
// move legality, configuration transitions, strategy replay with cost
// accounting, and the frugality classifier.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pebble/dag.hpp"

namespace pebble {

enum class Game { standard, black_white };

inline std::string to_string(Game g) {
  return g == Game::standard ? "standard" : "black_white";
}
inline Game game_from_string(const std::string& s) {
  if (s == "standard") return Game::standard;
  if (s == "black_white" || s == "bw") return Game::black_white;
  throw InputError("unknown game '" + s + "'");
}

// Pebbles on the board at one time step. Node sets are kept sorted; in the
// standard game `white` stays empty.
struct Configuration {
  std::vector<int> black;
  std::vector<int> white;

  int size() const { return (int)(black.size() + white.size()); }
  bool empty() const { return black.empty() && white.empty(); }

  static bool contains(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
  }
  bool has_black(int v) const { return contains(black, v); }
  bool has_white(int v) const { return contains(white, v); }
  bool pebbled(int v) const { return has_black(v) || has_white(v); }

  static void insert(std::vector<int>& v, int x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }
  static void erase(std::vector<int>& v, int x) {
    v.erase(std::lower_bound(v.begin(), v.end(), x));
  }
};

inline bool operator==(const Configuration& a, const Configuration& b) {
  return a.black == b.black && a.white == b.white;
}

enum class MoveKind {
  PlaceBlack,
  RemoveBlack,
  SlideBlack,  // v -> w along edge (v,w)
  PlaceWhite,
  RemoveWhite,
  SlideWhite,  // w -> v along edge (v,w): the white pebble moves backward
};

struct Move {
  MoveKind op;
  int v = 0;
  int w = 0;

  static Move place_black(int v) { return {MoveKind::PlaceBlack, v, 0}; }
  static Move remove_black(int v) { return {MoveKind::RemoveBlack, v, 0}; }
  static Move slide_black(int v, int w) { return {MoveKind::SlideBlack, v, w}; }
  static Move place_white(int v) { return {MoveKind::PlaceWhite, v, 0}; }
  static Move remove_white(int v) { return {MoveKind::RemoveWhite, v, 0}; }
  static Move slide_white(int w, int v) { return {MoveKind::SlideWhite, v, w}; }
};

inline bool operator==(const Move& a, const Move& b) {
  return a.op == b.op && a.v == b.v && a.w == b.w;
}

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::PlaceBlack: return "PlaceBlack";
    case MoveKind::RemoveBlack: return "RemoveBlack";
    case MoveKind::SlideBlack: return "SlideBlack";
    case MoveKind::PlaceWhite: return "PlaceWhite";
    case MoveKind::RemoveWhite: return "RemoveWhite";
    case MoveKind::SlideWhite: return "SlideWhite";
  }
  return "?";
}

inline std::string to_string(const Move& m) {
  std::string s = move_kind_name(m.op);
  s += "(v" + std::to_string(m.v);
  if (m.op == MoveKind::SlideBlack) s += "->v" + std::to_string(m.w);
  if (m.op == MoveKind::SlideWhite) s = std::string(move_kind_name(m.op)) +
                                        "(v" + std::to_string(m.w) + "->v" +
                                        std::to_string(m.v);
  s += ")";
  return s;
}

struct IllegalMove : std::runtime_error {
  std::string reason;
  int index;  // move index during replay, -1 for a bare apply_move

  explicit IllegalMove(std::string r, int idx = -1)
      : std::runtime_error("illegal move" +
                           (idx >= 0 ? " at index " + std::to_string(idx)
                                     : std::string()) +
                           ": " + r),
        reason(std::move(r)),
        index(idx) {}
};

namespace detail {
inline bool all_pebbled(const Configuration& c, const std::vector<int>& nodes,
                        int except = 0) {
  for (int u : nodes)
    if (u != except && !c.pebbled(u)) return false;
  return true;
}
}  // namespace detail

// Pure transition function. Throws IllegalMove naming the violated rule.
inline Configuration apply_move(const Dag& d, Game game,
                                const Configuration& config, const Move& m) {
  auto require_node = [&](int v) {
    if (!d.has_node(v))
      throw IllegalMove("unknown node id v" + std::to_string(v));
  };
  auto require_white_game = [&] {
    if (game != Game::black_white)
      throw IllegalMove("white pebbles are only part of the black-white game");
  };
  Configuration next = config;
  switch (m.op) {
    case MoveKind::PlaceBlack: {
      require_node(m.v);
      if (config.pebbled(m.v))
        throw IllegalMove("cannot place on v" + std::to_string(m.v) +
                          ": node already carries a pebble");
      if (!d.indegree_zero(m.v) &&
          !detail::all_pebbled(config, d.preds[m.v]))
        throw IllegalMove(
            "a pebble can be placed on a non-source vertex only if its direct "
            "predecessors are pebbled (v" +
            std::to_string(m.v) + ")");
      Configuration::insert(next.black, m.v);
      return next;
    }
    case MoveKind::RemoveBlack: {
      require_node(m.v);
      if (!config.has_black(m.v))
        throw IllegalMove("no black pebble on v" + std::to_string(m.v) +
                          " to remove");
      Configuration::erase(next.black, m.v);
      return next;
    }
    case MoveKind::SlideBlack: {
      require_node(m.v);
      require_node(m.w);
      if (!config.has_black(m.v))
        throw IllegalMove("no black pebble on v" + std::to_string(m.v) +
                          " to slide");
      if (!std::binary_search(d.preds[m.w].begin(), d.preds[m.w].end(), m.v))
        throw IllegalMove("slide requires edge (v" + std::to_string(m.v) +
                          ",v" + std::to_string(m.w) + ")");
      if (config.pebbled(m.w))
        throw IllegalMove("slide destination v" + std::to_string(m.w) +
                          " already carries a pebble");
      if (!detail::all_pebbled(config, d.preds[m.w]))
        throw IllegalMove(
            "a pebble can slide to a vertex only if all of its direct "
            "predecessors are pebbled (v" +
            std::to_string(m.w) + ")");
      Configuration::erase(next.black, m.v);
      Configuration::insert(next.black, m.w);
      return next;
    }
    case MoveKind::PlaceWhite: {
      require_white_game();
      require_node(m.v);
      if (config.pebbled(m.v))
        throw IllegalMove("a white pebble can be placed only on an empty "
                          "vertex (v" +
                          std::to_string(m.v) + ")");
      Configuration::insert(next.white, m.v);
      return next;
    }
    case MoveKind::RemoveWhite: {
      require_white_game();
      require_node(m.v);
      if (!config.has_white(m.v))
        throw IllegalMove("no white pebble on v" + std::to_string(m.v) +
                          " to remove");
      if (!d.indegree_zero(m.v) &&
          !detail::all_pebbled(config, d.preds[m.v]))
        throw IllegalMove(
            "a white pebble can be removed from a non-source vertex only if "
            "its direct predecessors are pebbled (v" +
            std::to_string(m.v) + ")");
      Configuration::erase(next.white, m.v);
      return next;
    }
    case MoveKind::SlideWhite: {
      require_white_game();
      require_node(m.v);
      require_node(m.w);
      if (!config.has_white(m.w))
        throw IllegalMove("no white pebble on v" + std::to_string(m.w) +
                          " to slide");
      if (!std::binary_search(d.preds[m.w].begin(), d.preds[m.w].end(), m.v))
        throw IllegalMove("white slide requires edge (v" +
                          std::to_string(m.v) + ",v" + std::to_string(m.w) +
                          ")");
      if (config.pebbled(m.v))
        throw IllegalMove("white slide destination v" + std::to_string(m.v) +
                          " already carries a pebble");
      if (!detail::all_pebbled(config, d.preds[m.w], /*except=*/m.v))
        throw IllegalMove(
            "a white pebble can move from w to a predecessor v only if the "
            "other predecessors of w are pebbled (v" +
            std::to_string(m.w) + ")");
      Configuration::erase(next.white, m.w);
      Configuration::insert(next.white, m.v);
      return next;
    }
  }
  throw IllegalMove("unknown move kind");
}

struct Strategy {
  Game game = Game::standard;
  std::vector<Move> moves;
};

struct CostReport {
  int space = 0;     // Peb(G, P): max pebbles over all configurations
  int time = 0;      // Time(G, P): number of moves
  bool complete = false;  // terminal configuration is exactly (T, empty)
};

// Replays from the empty configuration. Throws IllegalMove (with its index)
// on the first rejected move. Completion demands the exact terminal
// configuration: all targets black and nothing else on the board.
inline CostReport replay(const Dag& d, const Strategy& s) {
  Configuration c;
  CostReport r;
  for (size_t i = 0; i < s.moves.size(); ++i) {
    try {
      c = apply_move(d, s.game, c, s.moves[i]);
    } catch (const IllegalMove& e) {
      throw IllegalMove(e.reason, (int)i);
    }
    r.space = std::max(r.space, c.size());
  }
  r.time = (int)s.moves.size();
  r.complete = c.white.empty() && c.black == d.targets;
  return r;
}

// ---- frugality (analysis predicate, not enforced by replay) --------------

// True iff some source-to-target path through v carries no pebble of c,
// i.e. v's first-pebbling obligation is "unblocked". A path here is any
// v -> target path; it is pebble-free when none of its nodes is pebbled.
inline bool has_pebble_free_path_to_target(const Dag& d,
                                           const Configuration& c, int v,
                                           int target) {
  if (c.pebbled(v)) return false;
  if (v == target) return true;
  std::vector<int> stack{v};
  std::vector<char> seen(d.n + 1, 0);
  seen[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : d.succs[u]) {
      if (seen[w] || c.pebbled(w)) continue;
      if (w == target) return true;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return false;
}

// Nodes lying on some v->target path: descendants(v) intersected with
// ancestors(target), v and target included when connected.
inline std::vector<char> nodes_on_paths_to_target(const Dag& d, int v,
                                                  int target) {
  std::vector<char> desc(d.n + 1, 0), anc(d.n + 1, 0);
  std::vector<int> stack{v};
  desc[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : d.succs[u])
      if (!desc[w]) desc[w] = 1, stack.push_back(w);
  }
  stack.push_back(target);
  anc[target] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : d.preds[u])
      if (!anc[w]) anc[w] = 1, stack.push_back(w);
  }
  std::vector<char> on(d.n + 1, 0);
  for (int u = 1; u <= d.n; ++u) on[u] = desc[u] && anc[u];
  return on;
}

// Frugal strategy classifier (analysis only; replay never enforces it).
// Defined for single-target graphs; the three conditions: (1) from the first
// pebbling of v onward, some v->target path carries a pebble; (2) after the
// last pebbling of v, every v->target path carries a pebble; (3) placements
// on v never exceed total placements on succ(v).
inline bool is_frugal(const Dag& d, const Strategy& s) {
  if (d.targets.size() != 1)
    throw InputError("frugality is defined for single-target graphs");
  int target = d.targets[0];

  auto places_on = [](const Move& m) -> int {
    switch (m.op) {
      case MoveKind::PlaceBlack: return m.v;
      case MoveKind::SlideBlack: return m.w;
      case MoveKind::PlaceWhite: return m.v;
      case MoveKind::SlideWhite: return m.v;
      default: return 0;
    }
  };

  std::vector<Configuration> trace;
  trace.emplace_back();
  Configuration c;
  for (const auto& m : s.moves) {
    c = apply_move(d, s.game, c, m);
    trace.push_back(c);
  }

  std::vector<int> first_pebbled(d.n + 1, -1), last_pebbled(d.n + 1, -1);
  std::vector<int> placements(d.n + 1, 0);
  for (size_t i = 0; i < s.moves.size(); ++i) {
    int v = places_on(s.moves[i]);
    if (v == 0) continue;
    ++placements[v];
    if (first_pebbled[v] < 0) first_pebbled[v] = (int)i + 1;
    last_pebbled[v] = (int)i + 1;
  }

  for (int v = 1; v <= d.n; ++v) {
    if (first_pebbled[v] < 0 || v == target) continue;
    std::vector<char> on = nodes_on_paths_to_target(d, v, target);
    bool connected = on[v] != 0;
    if (connected) {
      // (1): some pebble sits on a node of some v->target path
      auto some_blocked = [&](const Configuration& cfg) {
        for (int u : cfg.black)
          if (on[u]) return true;
        for (int u : cfg.white)
          if (on[u]) return true;
        return false;
      };
      for (size_t t = first_pebbled[v]; t < trace.size(); ++t)
        if (!some_blocked(trace[t])) return false;
      // (2): no pebble-free v->target path once v is done
      for (size_t t = last_pebbled[v]; t < trace.size(); ++t)
        if (has_pebble_free_path_to_target(d, trace[t], v, target))
          return false;
    }
    // (3)
    if (!d.succs[v].empty()) {
      long succ_total = 0;
      for (int w : d.succs[v]) succ_total += placements[w];
      if (placements[v] > succ_total) return false;
    }
  }
  return true;
}

// ---- strategy interchange -------------------------------------------------

inline std::string to_json(const Strategy& s) {
  nlohmann::json j;
  j["game"] = to_string(s.game);
  auto& jm = j["moves"] = nlohmann::json::array();
  for (const auto& m : s.moves) {
    nlohmann::json e;
    e["op"] = move_kind_name(m.op);
    e["v"] = m.v;
    if (m.op == MoveKind::SlideBlack || m.op == MoveKind::SlideWhite)
      e["w"] = m.w;
    jm.push_back(e);
  }
  return j.dump(2);
}

inline Strategy strategy_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed strategy document: ") + e.what());
  }
  Strategy s;
  if (!j.contains("game")) throw InputError("strategy missing 'game'");
  s.game = game_from_string(j["game"].get<std::string>());
  for (const auto& e : j["moves"]) {
    std::string op = e["op"].get<std::string>();
    Move m{};
    if (op == "PlaceBlack") m.op = MoveKind::PlaceBlack;
    else if (op == "RemoveBlack") m.op = MoveKind::RemoveBlack;
    else if (op == "SlideBlack") m.op = MoveKind::SlideBlack;
    else if (op == "PlaceWhite") m.op = MoveKind::PlaceWhite;
    else if (op == "RemoveWhite") m.op = MoveKind::RemoveWhite;
    else if (op == "SlideWhite") m.op = MoveKind::SlideWhite;
    else throw InputError("unknown move op '" + op + "'");
    m.v = e["v"].get<int>();
    if (m.op == MoveKind::SlideBlack || m.op == MoveKind::SlideWhite)
      m.w = e["w"].get<int>();
    s.moves.push_back(m);
  }
  return s;
}

}  // namespace pebble
