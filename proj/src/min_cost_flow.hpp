#pragma once

// Uncapacitated min-cost flow by successive shortest paths. Internal to the
// library; the public entry points live in transport.hpp and free_norm.hpp.
//
// The engine is generic over the number type. Rational inputs are first
// brought to a common denominator and solved in overflow-checked 64-bit
// integers; if anything overflows the solve is repeated in GMP rationals.
// Either way the arithmetic is exact.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "graevkit/error.hpp"
#include "graevkit/rational.hpp"

namespace graevkit::detail {

struct FlowNetwork {
  /// supply[v] > 0 is a source, < 0 a sink; must sum to zero.
  std::vector<Rational> supply;
  /// cost[u][v] for each arc u -> v that exists; arcs have no capacity bound.
  /// Costs must be nonnegative.
  std::vector<std::vector<std::optional<Rational>>> cost;
};

struct FlowSolution {
  /// flow[u][v] on arc u -> v; never positive on both u -> v and v -> u.
  std::vector<std::vector<Rational>> flow;
  /// Node prices p with cost(u,v) + p[u] - p[v] >= 0 on every arc, and = 0
  /// on every arc that carries flow.
  std::vector<Rational> price;
  Rational cost;
};

/// Throws DomainError if supplies do not balance or a sink is unreachable.
/// Ties in the shortest-path search go to the lower node index.
FlowSolution solve_min_cost_flow(const FlowNetwork& network);

/// Solves without the integer fast path. Exposed for tests.
FlowSolution solve_min_cost_flow_rational(const FlowNetwork& network);

// ---------------------------------------------------------------------------

struct ArithmeticOverflow {};

/// int64 that throws ArithmeticOverflow instead of wrapping.
class CheckedInt {
 public:
  CheckedInt() = default;
  CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design of the engine
  std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return r;
  }
  CheckedInt operator-() const { return CheckedInt(0) - *this; }
  CheckedInt& operator+=(CheckedInt b) { return *this = *this + b; }
  CheckedInt& operator-=(CheckedInt b) { return *this = *this - b; }
  friend auto operator<=>(CheckedInt, CheckedInt) = default;

 private:
  std::int64_t v_ = 0;
};

template <class Num>
struct FlowProblem {
  std::size_t n = 0;
  std::vector<Num> supply;
  std::vector<Num> cost;        // n * n, row-major
  std::vector<char> has_arc;    // n * n
};

template <class Num>
struct FlowResult {
  std::vector<Num> flow;   // n * n
  std::vector<Num> price;
};

template <class Num>
FlowResult<Num> successive_shortest_paths(const FlowProblem<Num>& pb) {
  const std::size_t n = pb.n;
  enum Step : char { kNone, kForward, kBackward };

  FlowResult<Num> res;
  res.flow.assign(n * n, Num(0));
  res.price.assign(n, Num(0));
  std::vector<Num> excess = pb.supply;
  auto& flow = res.flow;
  auto& price = res.price;

  std::vector<Num> dist(n);
  std::vector<char> reached(n), done(n), how(n);
  std::vector<std::size_t> pred(n);
  Num reduced;

  for (;;) {
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      reached[v] = done[v] = 0;
      how[v] = kNone;
      if (excess[v] > Num(0)) {
        any = true;
        reached[v] = 1;
        dist[v] = Num(0);
      }
    }
    if (!any) break;

    // Multi-source Dijkstra on reduced costs from every node with excess.
    std::optional<std::size_t> sink;
    for (;;) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (reached[v] && !done[v] && (u == n || dist[v] < dist[u])) u = v;
      }
      if (u == n) break;
      done[u] = 1;
      if (excess[u] < Num(0)) {
        sink = u;
        break;
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || done[v]) continue;
        // Cancelling flow on v -> u never costs more than a forward arc.
        char step = kNone;
        if (flow[v * n + u] > Num(0)) {
          reduced = price[u] - price[v] - pb.cost[v * n + u];
          step = kBackward;
        } else if (pb.has_arc[u * n + v]) {
          reduced = pb.cost[u * n + v] + price[u] - price[v];
          step = kForward;
        }
        if (step == kNone) continue;
        reduced += dist[u];
        if (!reached[v] || reduced < dist[v]) {
          reached[v] = 1;
          dist[v] = reduced;
          pred[v] = u;
          how[v] = step;
        }
      }
    }
    if (!sink) throw DomainError("flow network: remaining demand is unreachable");

    // Truncated price update keeps every reduced cost nonnegative and makes
    // the arcs of the shortest-path tree up to `sink` tight.
    const Num bound = dist[*sink];
    for (std::size_t v = 0; v < n; ++v) {
      price[v] += (done[v] && dist[v] < bound) ? dist[v] : bound;
    }

    Num amount = -excess[*sink];
    std::size_t v = *sink;
    while (how[v] != kNone) {
      if (how[v] == kBackward && flow[v * n + pred[v]] < amount) amount = flow[v * n + pred[v]];
      v = pred[v];
    }
    if (excess[v] < amount) amount = excess[v];

    excess[v] -= amount;
    excess[*sink] += amount;
    for (std::size_t w = *sink; how[w] != kNone; w = pred[w]) {
      if (how[w] == kForward) {
        flow[pred[w] * n + w] += amount;
      } else {
        flow[w * n + pred[w]] -= amount;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Cycles in the support of a flow.

struct CycleArc {
  std::size_t from;
  std::size_t to;
  std::size_t id;  // position in the arc list passed to find_cycle
  int sign;        // +1 when the cycle walks the arc forwards
};

/// A cycle in the undirected multigraph with the given arcs, or an empty
/// vector if they form a forest. The first arc (in list order) that closes a
/// cycle is walked forwards.
std::vector<CycleArc> find_cycle(std::size_t node_count,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& arcs);

template <class Num>
struct NetArc {
  std::size_t from;
  std::size_t to;
  Num mass;
};

/// Net flow on each arc of an optimal solution, with cycles in its support
/// cancelled. An optimal flow has zero cost around every cycle of its
/// support, so cancelling keeps the cost; it is pushed in the direction of
/// non-positive cost change anyway. Arcs are listed in (from, to) order.
template <class Num>
std::vector<NetArc<Num>> forest_arcs(const FlowProblem<Num>& pb, const FlowResult<Num>& res) {
  const std::size_t n = pb.n;
  std::vector<NetArc<Num>> arcs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (res.flow[u * n + v] > res.flow[v * n + u]) {
        arcs.push_back({u, v, res.flow[u * n + v] - res.flow[v * n + u]});
      }
    }
  }
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& a : arcs) ends.emplace_back(a.from, a.to);
    const auto cycle = find_cycle(n, ends);
    if (cycle.empty()) return arcs;
    Num delta(0);
    for (const auto& c : cycle) {
      if (c.sign > 0) {
        delta += pb.cost[c.from * n + c.to];
      } else {
        delta -= pb.cost[c.from * n + c.to];
      }
    }
    int dir = delta < Num(0) ? +1 : -1;
    if (delta == Num(0)) {
      // either way is free; pick one that empties some arc
      dir = std::any_of(cycle.begin(), cycle.end(), [](const CycleArc& c) { return c.sign < 0; })
                ? +1
                : -1;
    }
    std::optional<Num> amount;
    for (const auto& c : cycle) {
      if (c.sign * dir < 0 && (!amount || arcs[c.id].mass < *amount)) amount = arcs[c.id].mass;
    }
    for (const auto& c : cycle) {
      if (c.sign * dir > 0) {
        arcs[c.id].mass += *amount;
      } else {
        arcs[c.id].mass -= *amount;
      }
    }
    std::erase_if(arcs, [](const NetArc<Num>& a) { return a.mass == Num(0); });
  }
}

}  // namespace graevkit::detail
