#include "graevkit/io.hpp"

#include <fstream>

#include "graevkit/error.hpp"

namespace graevkit::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string point_name(const json& j) {
  if (!j.is_string()) throw ParseError("point identifiers must be strings");
  return j.get<std::string>();
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  throw ParseError("rationals must be strings like \"3/2\" or integers, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Spaces and chains

PointedMetricSpace space_from_json(const json& j) {
  const json& pts = field(j, "points");
  const json& rows = field(j, "dist");
  if (!pts.is_array() || !rows.is_array()) throw ParseError("'points' and 'dist' must be arrays");
  std::vector<std::string> points;
  for (const auto& p : pts) points.push_back(point_name(p));
  RationalMatrix dist;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("'dist' must be an array of rows");
    auto& out = dist.emplace_back();
    for (const auto& v : row) out.push_back(rational_from_json(v));
  }
  return PointedMetricSpace(std::move(points), point_name(field(j, "basepoint")), std::move(dist));
}

json space_to_json(const PointedMetricSpace& space) {
  json rows = json::array();
  for (const auto& row : space.matrix()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(std::move(r));
  }
  return {{"points", space.points()},
          {"basepoint", space.name(space.basepoint())},
          {"dist", std::move(rows)}};
}

Chain chain_from_json(const PointedMetricSpace& space, const json& j) {
  if (!j.is_object()) throw ParseError("a chain must be a JSON object");
  Chain c;
  for (const auto& [key, value] : j.items()) {
    const PointIndex p = space.index_of(key);
    if (p == space.basepoint()) {
      throw DomainError("chain has a coefficient on the basepoint '" + key + "'");
    }
    c.add(p, rational_from_json(value));
  }
  return c;
}

json chain_to_json(const PointedMetricSpace& space, const Chain& chain) {
  json out = json::object();
  for (const auto& [p, c] : chain.terms()) out[space.name(p)] = to_string(c);
  return out;
}

ProbMeasure measure_from_json(const PointedMetricSpace& space, const json& j) {
  if (!j.is_object()) throw ParseError("a measure must be a JSON object");
  ProbMeasure::Weights w;
  for (const auto& [key, value] : j.items()) {
    const Rational r = rational_from_json(value);
    if (r != 0) w[space.index_of(key)] += r;
  }
  return ProbMeasure(space, std::move(w));
}

Word word_from_json(const PointedMetricSpace& space, const json& j) {
  if (!j.is_object()) throw ParseError("a word must be a JSON object");
  Word w;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer()) throw ParseError("word coefficients must be integers");
    const PointIndex p = space.index_of(key);
    if (p == space.basepoint()) {
      throw DomainError("word has a coefficient on the basepoint '" + key + "'");
    }
    w.add(p, value.get<std::int64_t>());
  }
  return w;
}

json word_to_json(const PointedMetricSpace& space, const Word& word) {
  json out = json::object();
  for (const auto& [p, c] : word.terms()) out[space.name(p)] = c;
  return out;
}

// ---------------------------------------------------------------------------
// Plans, potentials, certificates

json plan_to_json(const PointedMetricSpace& space, const TransportPlan& plan) {
  json out = json::array();
  for (const auto& [arc, m] : plan.entries()) {
    out.push_back({space.name(arc.first), space.name(arc.second), to_string(m)});
  }
  return out;
}

TransportPlan plan_from_json(const PointedMetricSpace& space, const json& j) {
  if (!j.is_array()) throw ParseError("a plan must be an array of [source, sink, mass]");
  TransportPlan plan(space.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw ParseError("plan entries are [source, sink, mass]");
    const Rational m = rational_from_json(e[2]);
    if (m <= 0) throw DomainError("plan masses must be positive");
    plan.add(space.index_of(point_name(e[0])), space.index_of(point_name(e[1])), m);
  }
  return plan;
}

json potential_to_json(const PointedMetricSpace& space, const DualPotential& f) {
  json out = json::object();
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (p != space.basepoint()) out[space.name(p)] = to_string(f.values.at(p));
  }
  return out;
}

DualPotential potential_from_json(const PointedMetricSpace& space, const json& j) {
  if (!j.is_object()) throw ParseError("a potential must be a JSON object");
  std::vector<std::optional<Rational>> values(space.size());
  values[space.basepoint()] = Rational(0);
  for (const auto& [key, value] : j.items()) values[space.index_of(key)] = rational_from_json(value);
  DualPotential f;
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (!values[p]) throw ParseError("potential has no value for '" + space.name(p) + "'");
    f.values.push_back(*values[p]);
  }
  return f;
}

json certificate_to_json(const PointedMetricSpace& space, const TransportCertificate& cert) {
  return {{"cost", to_string(cert.cost)},
          {"plan", plan_to_json(space, cert.plan)},
          {"potential", potential_to_json(space, cert.potential)}};
}

TransportCertificate certificate_from_json(const PointedMetricSpace& space, const json& j) {
  return {plan_from_json(space, field(j, "plan")), rational_from_json(field(j, "cost")),
          potential_from_json(space, field(j, "potential"))};
}

json validation_to_json(const PointedMetricSpace& space, const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json pts = json::array(), vals = json::array();
    for (auto i : v.indices) pts.push_back(space.name(i));
    for (const auto& x : v.values) vals.push_back(to_string(x));
    violations.push_back({{"axiom", v.axiom}, {"points", pts}, {"values", vals}});
  }
  return {{"ok", report.ok}, {"violations", violations}};
}

// ---------------------------------------------------------------------------
// Groups

MetricAbelianGroup metric_group_from_json(const json& j) {
  const json& els = field(j, "elements");
  if (!els.is_array()) throw ParseError("'elements' must be an array");
  std::vector<std::string> elements;
  for (const auto& e : els) {
    if (e.is_string()) {
      elements.push_back(e.get<std::string>());
    } else if (e.is_number_integer()) {
      elements.push_back(std::to_string(e.get<long long>()));
    } else {
      throw ParseError("group elements must be strings or integers");
    }
  }
  auto element_ref = [&](const json& v) -> ElementIndex {
    if (v.is_number_unsigned()) return v.get<ElementIndex>();
    if (v.is_string()) {
      const auto it = std::find(elements.begin(), elements.end(), v.get<std::string>());
      if (it != elements.end()) return static_cast<ElementIndex>(it - elements.begin());
    }
    throw ParseError("unknown group element " + v.dump());
  };
  std::vector<std::vector<ElementIndex>> op;
  for (const auto& row : field(j, "op")) {
    auto& out = op.emplace_back();
    for (const auto& v : row) out.push_back(element_ref(v));
  }
  RationalMatrix dist;
  for (const auto& row : field(j, "dist")) {
    auto& out = dist.emplace_back();
    for (const auto& v : row) out.push_back(rational_from_json(v));
  }
  return MetricAbelianGroup(std::move(elements), std::move(op), std::move(dist));
}

std::vector<ElementIndex> point_map_from_json(const PointedMetricSpace& space,
                                              const MetricAbelianGroup& group, const json& j) {
  if (!j.is_object()) throw ParseError("a point map must be a JSON object");
  std::vector<std::optional<ElementIndex>> values(space.size());
  for (const auto& [key, value] : j.items()) {
    const std::string name =
        value.is_string() ? value.get<std::string>() : std::to_string(value.get<long long>());
    values[space.index_of(key)] = group.index_of(name);
  }
  if (!values[space.basepoint()]) values[space.basepoint()] = group.identity();
  std::vector<ElementIndex> out;
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (!values[p]) throw ParseError("point map has no value for '" + space.name(p) + "'");
    out.push_back(*values[p]);
  }
  return out;
}

FiniteAbelianGroup group_from_json(const json& j) {
  const json& f = field(j, "cyclic_factors");
  if (!f.is_array()) throw ParseError("'cyclic_factors' must be an array");
  std::vector<int> factors;
  for (const auto& n : f) {
    if (!n.is_number_integer()) throw ParseError("cyclic factors must be integers");
    factors.push_back(n.get<int>());
  }
  return FiniteAbelianGroup(std::move(factors));
}

PDFunction pd_function_from_json(const FiniteAbelianGroup& group, const json& j) {
  auto complex_from = [](const json& v) -> Complex {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ParseError("function values must be [re, im] pairs");
  };
  std::vector<std::optional<Complex>> values(group.order());
  if (j.is_array()) {
    if (j.size() != group.order()) throw ParseError("function needs one value per element");
    for (std::size_t g = 0; g < j.size(); ++g) values[g] = complex_from(j[g]);
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      std::size_t g = 0;
      try {
        g = std::stoul(key);
      } catch (const std::exception&) {
        throw ParseError("function keys must be element indices, got '" + key + "'");
      }
      if (g >= group.order()) throw ParseError("element index " + key + " out of range");
      values[g] = complex_from(value);
    }
  } else {
    throw ParseError("a function must be a JSON array or object");
  }
  PDFunction f;
  for (std::size_t g = 0; g < values.size(); ++g) {
    if (!values[g]) throw ParseError("function has no value at element " + std::to_string(g));
    f.values.push_back(*values[g]);
  }
  return f;
}

json representation_report_to_json(const GnsModel& model, const RepresentationReport& report) {
  return {{"dimension", model.dimension()},
          {"unitarity_residual", report.unitarity},
          {"homomorphism_residual", report.homomorphism},
          {"recovery_residual", report.recovery},
          {"cyclic_rank", report.cyclic_rank},
          {"cyclicity_residual", report.cyclicity}};
}

}  // namespace graevkit::io
