#include "min_cost_flow.hpp"

namespace graevkit::detail {
namespace {

void check_network(const FlowNetwork& network) {
  const std::size_t n = network.supply.size();
  if (network.cost.size() != n) throw DomainError("flow network: cost matrix size mismatch");
  Rational balance = 0;
  for (const auto& s : network.supply) balance += s;
  if (balance != 0) throw DomainError("flow network: supplies do not balance");
  for (const auto& row : network.cost) {
    if (row.size() != n) throw DomainError("flow network: cost matrix is not square");
    for (const auto& c : row) {
      if (c && *c < 0) throw DomainError("flow network: negative arc cost");
    }
  }
}

FlowSolution finish(const FlowNetwork& network, std::vector<Rational> flow_flat,
                    std::vector<Rational> price) {
  const std::size_t n = network.supply.size();
  FlowSolution sol;
  sol.flow.assign(n, std::vector<Rational>(n));
  sol.cost = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      auto& f = flow_flat[u * n + v];
      if (f > 0) sol.cost += f * *network.cost[u][v];
      sol.flow[u][v] = std::move(f);
    }
  }
  sol.price = std::move(price);
  return sol;
}

mpz_class common_denominator(const std::vector<const Rational*>& values) {
  mpz_class l = 1;
  for (const auto* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

// Values are kept well inside int64 so that a few sums and products of them
// are likely to fit; anything larger goes straight to the rational path.
bool to_small(const Rational& value, const mpz_class& scale, CheckedInt& out) {
  const mpz_class scaled = value.get_num() * (scale / value.get_den());
  if (!scaled.fits_slong_p()) return false;
  const long v = scaled.get_si();
  if (v > (1L << 40) || v < -(1L << 40)) return false;
  out = CheckedInt(v);
  return true;
}

std::optional<FlowSolution> try_integer_path(const FlowNetwork& network) {
  const std::size_t n = network.supply.size();
  std::vector<const Rational*> costs, supplies;
  for (const auto& row : network.cost) {
    for (const auto& c : row) {
      if (c) costs.push_back(&*c);
    }
  }
  for (const auto& s : network.supply) supplies.push_back(&s);
  const mpz_class cost_scale = common_denominator(costs);
  const mpz_class supply_scale = common_denominator(supplies);

  FlowProblem<CheckedInt> pb;
  pb.n = n;
  pb.supply.resize(n);
  pb.cost.assign(n * n, CheckedInt(0));
  pb.has_arc.assign(n * n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    if (!to_small(network.supply[u], supply_scale, pb.supply[u])) return std::nullopt;
    for (std::size_t v = 0; v < n; ++v) {
      if (const auto& c = network.cost[u][v]) {
        pb.has_arc[u * n + v] = 1;
        if (!to_small(*c, cost_scale, pb.cost[u * n + v])) return std::nullopt;
      }
    }
  }

  FlowResult<CheckedInt> res;
  try {
    res = successive_shortest_paths(pb);
  } catch (const ArithmeticOverflow&) {
    return std::nullopt;
  }

  std::vector<Rational> flow(n * n), price(n);
  for (std::size_t i = 0; i < n * n; ++i) {
    flow[i] = Rational(mpz_class(static_cast<long>(res.flow[i].value())), supply_scale);
    flow[i].canonicalize();
  }
  for (std::size_t v = 0; v < n; ++v) {
    price[v] = Rational(mpz_class(static_cast<long>(res.price[v].value())), cost_scale);
    price[v].canonicalize();
  }
  return finish(network, std::move(flow), std::move(price));
}

}  // namespace

FlowSolution solve_min_cost_flow_rational(const FlowNetwork& network) {
  check_network(network);
  const std::size_t n = network.supply.size();
  FlowProblem<Rational> pb;
  pb.n = n;
  pb.supply = network.supply;
  pb.cost.assign(n * n, Rational(0));
  pb.has_arc.assign(n * n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (const auto& c = network.cost[u][v]) {
        pb.has_arc[u * n + v] = 1;
        pb.cost[u * n + v] = *c;
      }
    }
  }
  auto res = successive_shortest_paths(pb);
  return finish(network, std::move(res.flow), std::move(res.price));
}

FlowSolution solve_min_cost_flow(const FlowNetwork& network) {
  check_network(network);
  if (auto sol = try_integer_path(network)) return *std::move(sol);
  return solve_min_cost_flow_rational(network);
}

std::vector<CycleArc> find_cycle(std::size_t node_count,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  // Union-find settles the common forest case without building adjacency.
  std::vector<std::size_t> root(node_count);
  for (std::size_t v = 0; v < node_count; ++v) root[v] = v;
  auto find = [&](std::size_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  std::size_t closing = arcs.size();
  for (std::size_t id = 0; id < arcs.size(); ++id) {
    const auto a = find(arcs[id].first), b = find(arcs[id].second);
    if (a == b) {
      closing = id;
      break;
    }
    root[a] = b;
  }
  if (closing == arcs.size()) return {};

  // Path from the closing arc's sink back to its source through earlier arcs.
  const auto [src, dst] = arcs[closing];
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(node_count);
  for (std::size_t id = 0; id < closing; ++id) {
    adj[arcs[id].first].emplace_back(arcs[id].second, id);
    adj[arcs[id].second].emplace_back(arcs[id].first, id);
  }
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(node_count);
  std::vector<char> seen(node_count, 0);
  std::vector<std::size_t> queue{dst};
  seen[dst] = 1;
  for (std::size_t head = 0; head < queue.size() && !seen[src]; ++head) {
    const std::size_t u = queue[head];
    for (const auto& [v, id] : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = std::make_pair(u, id);
        queue.push_back(v);
      }
    }
  }

  std::vector<CycleArc> cycle{{src, dst, closing, +1}};
  std::vector<CycleArc> back;
  for (std::size_t v = src; v != dst; v = parent[v]->first) {
    const auto [u, id] = *parent[v];
    // walked u -> v while going from dst back to src
    back.push_back({arcs[id].first, arcs[id].second, id, arcs[id].first == u ? +1 : -1});
  }
  cycle.insert(cycle.end(), back.rbegin(), back.rend());
  return cycle;
}

}  // namespace graevkit::detail
