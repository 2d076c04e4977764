#pragma once

// JSON encodings of the library's objects. Rationals are written as
// canonical strings; objects are keyed by point names. Readers throw
// ParseError on malformed JSON and StructuralError / DomainError when the
// content does not fit the space it refers to.

#include <json.hpp>

#include <string>

#include "graevkit/free_norm.hpp"
#include "graevkit/graev.hpp"
#include "graevkit/metric_space.hpp"
#include "graevkit/pdf_gns.hpp"
#include "graevkit/transport.hpp"

namespace graevkit::io {

using nlohmann::json;

/// Parses a file; ParseError on I/O failure or invalid JSON.
json read_json_file(const std::string& path);

Rational rational_from_json(const json& j);

PointedMetricSpace space_from_json(const json& j);
json space_to_json(const PointedMetricSpace& space);

Chain chain_from_json(const PointedMetricSpace& space, const json& j);
json chain_to_json(const PointedMetricSpace& space, const Chain& chain);

ProbMeasure measure_from_json(const PointedMetricSpace& space, const json& j);

Word word_from_json(const PointedMetricSpace& space, const json& j);
json word_to_json(const PointedMetricSpace& space, const Word& word);

/// [[source, sink, mass], ...] in point-index order.
json plan_to_json(const PointedMetricSpace& space, const TransportPlan& plan);
TransportPlan plan_from_json(const PointedMetricSpace& space, const json& j);

/// {point: value} for every non-basepoint point; the basepoint is implied 0.
json potential_to_json(const PointedMetricSpace& space, const DualPotential& f);
DualPotential potential_from_json(const PointedMetricSpace& space, const json& j);

/// {"cost": ..., "plan": [...], "potential": {...}}
json certificate_to_json(const PointedMetricSpace& space, const TransportCertificate& cert);
TransportCertificate certificate_from_json(const PointedMetricSpace& space, const json& j);

json validation_to_json(const PointedMetricSpace& space, const ValidationReport& report);

/// {"elements": [...], "op": [[...]], "dist": [[...]]}; op entries may be
/// element names or indices.
MetricAbelianGroup metric_group_from_json(const json& j);
/// {point: element name} for every point.
std::vector<ElementIndex> point_map_from_json(const PointedMetricSpace& space,
                                              const MetricAbelianGroup& group, const json& j);

/// {"cyclic_factors": [4, 3]}
FiniteAbelianGroup group_from_json(const json& j);
/// Either an array of [re, im] pairs in element order or an object mapping
/// element index strings to [re, im]. Missing entries are an error.
PDFunction pd_function_from_json(const FiniteAbelianGroup& group, const json& j);

json representation_report_to_json(const GnsModel& model, const RepresentationReport& report);

}  // namespace graevkit::io
