#include "graevkit/transport.hpp"

#include <algorithm>
#include <tuple>
#include <optional>

#include "graevkit/error.hpp"
#include "min_cost_flow.hpp"

namespace graevkit {

// ---------------------------------------------------------------------------
// TransportPlan

void TransportPlan::add(PointIndex source, PointIndex sink, const Rational& mass) {
  if (source >= point_count_ || sink >= point_count_) {
    throw DomainError("plan arc refers to a point outside the space");
  }
  if (source == sink) throw DomainError("plan arcs must join distinct points");
  if (mass == 0) return;
  const auto it = entries_.find({source, sink});
  Rational total = it == entries_.end() ? mass : it->second + mass;
  if (total < 0) throw DomainError("plan mass must be positive");
  if (total == 0) {
    entries_.erase(it);
  } else if (it == entries_.end()) {
    entries_.emplace(std::make_pair(source, sink), std::move(total));
  } else {
    it->second = std::move(total);
  }
}

std::vector<Rational> TransportPlan::divergence() const {
  std::vector<Rational> div(point_count_);
  for (const auto& [arc, m] : entries_) {
    div[arc.first] += m;
    div[arc.second] -= m;
  }
  return div;
}

Chain TransportPlan::divergence_chain(const PointedMetricSpace& space) const {
  if (space.size() != point_count_) throw DomainError("plan and space differ in size");
  const auto div = divergence();
  Chain out;
  for (PointIndex p = 0; p < div.size(); ++p) {
    if (p != space.basepoint()) out.add(p, div[p]);
  }
  return out;
}

Rational TransportPlan::cost(const PointedMetricSpace& space) const {
  if (space.size() != point_count_) throw DomainError("plan and space differ in size");
  Rational total = 0;
  for (const auto& [arc, m] : entries_) total += m * space.distance(arc.first, arc.second);
  return total;
}

bool TransportPlan::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return is_integer(e.second); });
}

Rational DualPotential::pair_with(const Chain& chain) const {
  Rational total = 0;
  for (const auto& [p, c] : chain.terms()) total += values.at(p) * c;
  return total;
}

// ---------------------------------------------------------------------------
// Solving

namespace {

using detail::CheckedInt;

struct Solved {
  std::vector<PointIndex> nodes;  // network node -> point index, sorted
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> arcs;  // node indices
  std::vector<Rational> price;
  Rational cost;
};

Rational lift(const CheckedInt& v, const mpz_class& scale) {
  Rational r(mpz_class(static_cast<long>(v.value())), scale);
  r.canonicalize();
  return r;
}
Rational lift(const Rational& v, const mpz_class&) { return v; }

// Runs the flow engine on the prepared problem. Masses are divided by
// mass_scale and prices by cost_scale on the way out.
template <class Num>
void run(const detail::FlowProblem<Num>& pb, bool want_plan, const mpz_class& mass_scale,
         const mpz_class& cost_scale, Solved& s) {
  const auto res = detail::successive_shortest_paths(pb);
  const std::size_t k = pb.n;
  Num cost(0);
  if (want_plan) {
    for (const auto& a : detail::forest_arcs(pb, res)) {
      cost += a.mass * pb.cost[a.from * k + a.to];
      s.arcs.emplace_back(a.from, a.to, lift(a.mass, mass_scale));
    }
  } else {
    for (std::size_t i = 0; i < k * k; ++i) {
      if (res.flow[i] > Num(0)) cost += res.flow[i] * pb.cost[i];
    }
  }
  s.price.clear();
  for (const auto& p : res.price) s.price.push_back(lift(p, cost_scale));
  s.cost = lift(cost, mass_scale * cost_scale);
}

std::optional<CheckedInt> small(const Rational& v, const mpz_class& scale) {
  const mpz_class x = v.get_num() * (scale / v.get_den());
  if (!x.fits_slong_p()) return std::nullopt;
  const long y = x.get_si();
  if (y > (1L << 40) || y < -(1L << 40)) return std::nullopt;
  return CheckedInt(y);
}

bool try_integer(const PointedMetricSpace& space, const std::vector<Rational>& supply,
                 bool want_plan, Solved& s) {
  const auto& d = space.scaled_distances();
  if (d.empty()) return false;
  mpz_class mass_scale = 1;
  for (const auto& v : supply) {
    mpz_lcm(mass_scale.get_mpz_t(), mass_scale.get_mpz_t(), v.get_den_mpz_t());
  }
  const std::size_t k = s.nodes.size(), n = space.size();
  detail::FlowProblem<CheckedInt> pb;
  pb.n = k;
  pb.supply.reserve(k);
  for (const auto& v : supply) {
    const auto x = small(v, mass_scale);
    if (!x) return false;
    pb.supply.push_back(*x);
  }
  pb.cost.resize(k * k);
  pb.has_arc.assign(k * k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    pb.has_arc[i * k + i] = 0;
    for (std::size_t j = 0; j < k; ++j) pb.cost[i * k + j] = d[s.nodes[i] * n + s.nodes[j]];
  }
  try {
    run(pb, want_plan, mass_scale, space.distance_scale(), s);
  } catch (const detail::ArithmeticOverflow&) {
    s.arcs.clear();
    return false;
  }
  return true;
}

Solved solve_network(const PointedMetricSpace& space, const Chain& divergence, bool want_plan) {
  check_chain(space, divergence);
  Solved s;
  for (const auto& [p, c] : divergence.terms()) s.nodes.push_back(p);
  s.nodes.push_back(space.basepoint());
  std::sort(s.nodes.begin(), s.nodes.end());

  const std::size_t k = s.nodes.size();
  std::vector<Rational> supply(k);
  for (std::size_t i = 0; i < k; ++i) {
    const PointIndex p = s.nodes[i];
    supply[i] = p == space.basepoint() ? -divergence.total() : divergence.coefficient(p);
  }
  if (try_integer(space, supply, want_plan, s)) return s;

  detail::FlowProblem<Rational> pb;
  pb.n = k;
  pb.supply = std::move(supply);
  pb.cost.resize(k * k);
  pb.has_arc.assign(k * k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    pb.has_arc[i * k + i] = 0;
    for (std::size_t j = 0; j < k; ++j) pb.cost[i * k + j] = space.distance(s.nodes[i], s.nodes[j]);
  }
  run(pb, want_plan, 1, 1, s);
  return s;
}

TransportPlan extract_plan(const PointedMetricSpace& space, const Solved& s) {
  TransportPlan plan(space.size());
  for (const auto& [i, j, m] : s.arcs) plan.add(s.nodes[i], s.nodes[j], m);
  return plan;
}

// Prices give f = -price on the solved nodes. Off those nodes, f is the
// 1-Lipschitz extension closest to zero: clamp 0 between the smallest and
// the largest extension.
DualPotential extract_potential(const PointedMetricSpace& space, const Solved& s) {
  const std::size_t k = s.nodes.size();
  std::vector<std::optional<Rational>> known(space.size());
  Rational shift;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.nodes[i] == space.basepoint()) shift = s.price[i];
  }
  for (std::size_t i = 0; i < k; ++i) known[s.nodes[i]] = shift - s.price[i];

  DualPotential f;
  f.values.resize(space.size());
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (known[x]) {
      f.values[x] = *known[x];
      continue;
    }
    std::optional<Rational> upper, lower;
    for (PointIndex y : s.nodes) {
      const Rational up = *known[y] + space.distance(x, y);
      const Rational lo = *known[y] - space.distance(x, y);
      if (!upper || up < *upper) upper = up;
      if (!lower || lo > *lower) lower = lo;
    }
    Rational v = 0;
    if (v > *upper) v = *upper;
    if (v < *lower) v = *lower;
    f.values[x] = v;
  }
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations

TransportCertificate solve_transport(const PointedMetricSpace& space, const Chain& divergence) {
  const Solved s = solve_network(space, divergence, true);
  return {extract_plan(space, s), s.cost, extract_potential(space, s)};
}

MinCostSolution solve_min_cost(const PointedMetricSpace& space, const Chain& divergence) {
  const Solved s = solve_network(space, divergence, true);
  return {extract_plan(space, s), s.cost};
}

DualPotential dual_potentials(const PointedMetricSpace& space, const Chain& divergence) {
  return extract_potential(space, solve_network(space, divergence, false));
}

Rational min_cost_value(const PointedMetricSpace& space, const Chain& divergence) {
  return solve_network(space, divergence, false).cost;
}

bool is_feasible_potential(const PointedMetricSpace& space, const DualPotential& f) {
  if (f.values.size() != space.size()) {
    throw DomainError("potential and space differ in size");
  }
  if (f.values[space.basepoint()] != 0) return false;
  for (PointIndex a = 0; a < space.size(); ++a) {
    for (PointIndex b = a + 1; b < space.size(); ++b) {
      const Rational gap = f.values[a] - f.values[b];
      if (abs(gap) > space.distance(a, b)) return false;
    }
  }
  return true;
}

bool verify_optimality(const PointedMetricSpace& space, const TransportPlan& plan,
                       const DualPotential& f) {
  if (plan.point_count() != space.size()) throw DomainError("plan and space differ in size");
  if (!is_feasible_potential(space, f)) return false;
  for (const auto& [arc, m] : plan.entries()) {
    if (f.values[arc.first] - f.values[arc.second] != space.distance(arc.first, arc.second)) {
      return false;
    }
  }
  return true;
}

TransportPlan round_to_integer_plan(const PointedMetricSpace& space, const TransportPlan& plan) {
  if (plan.point_count() != space.size()) throw DomainError("plan and space differ in size");
  const auto div = plan.divergence();
  for (PointIndex p = 0; p < div.size(); ++p) {
    if (!is_integer(div[p])) {
      throw DomainError("divergence at '" + space.name(p) + "' is " + to_string(div[p]) +
                        ", not an integer");
    }
  }

  // Integral divergence forces every point touching a fractional arc to touch
  // at least two, so the fractional arcs always contain a cycle.
  TransportPlan out = plan;
  for (;;) {
    std::vector<TransportPlan::Arc> fractional;
    for (const auto& [arc, m] : out.entries()) {
      if (!is_integer(m)) fractional.push_back(arc);
    }
    if (fractional.empty()) return out;
    const auto cycle = detail::find_cycle(out.point_count(), fractional);
    if (cycle.empty()) throw Error("round_to_integer_plan: fractional arcs form a forest");
    Rational delta = 0;
    for (const auto& c : cycle) delta += c.sign * space.distance(c.from, c.to);
    const int dir = delta <= 0 ? +1 : -1;
    std::optional<Rational> amount;
    for (const auto& c : cycle) {
      const Rational& m = out.entries().at({c.from, c.to});
      const Rational room = c.sign * dir > 0 ? ceil(m) - m : m - floor(m);
      if (!amount || room < *amount) amount = room;
    }
    for (const auto& c : cycle) out.add(c.from, c.to, *amount * (c.sign * dir));
  }
}

}  // namespace graevkit
