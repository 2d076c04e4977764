#pragma once

#include <string>
#include <vector>

#include "graevkit/metric_space.hpp"

namespace graevkit::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline PointedMetricSpace make_space(std::vector<std::string> points, const std::string& base,
                                     const std::vector<std::vector<const char*>>& rows) {
  RationalMatrix d;
  for (const auto& row : rows) {
    d.emplace_back();
    for (const char* x : row) d.back().push_back(q(x));
  }
  return PointedMetricSpace(std::move(points), base, std::move(d));
}

/// {*, a, b} with d(*,a) = d(*,b) = 1 and d(a,b) = 3/2.
inline PointedMetricSpace three_halves_space() {
  return make_space({"*", "a", "b"}, "*", {{"0", "1", "1"}, {"1", "0", "3/2"}, {"1", "3/2", "0"}});
}

inline Chain chain_of(const PointedMetricSpace& s,
                      const std::vector<std::pair<std::string, const char*>>& terms) {
  Chain c;
  for (const auto& [name, v] : terms) c.add(s.index_of(name), q(v));
  return c;
}

}  // namespace graevkit::testing
