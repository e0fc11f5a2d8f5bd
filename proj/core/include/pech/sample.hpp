#pragma once

#include <map>
#include <string>

namespace pech {

/// Named scalar functionals of one state at time t.
struct Sample {
  double t = 0.0;
  std::map<std::string, double> values;

  double at(const std::string& key) const;
  bool has(const std::string& key) const { return values.count(key) != 0; }
};

}  // namespace pech
