#pragma once

#include <fermat/cascade.hpp>
#include <fermat/search.hpp>

#include <json.hpp>

#include <ostream>
#include <string>

namespace fermat {

// Integers travel as decimal strings so no consumer loses precision.
inline nlohmann::ordered_json record_json(const CanonicalSolution& s, const std::string& source,
                                          const std::optional<FiberKey>& curve, const std::string& cls) {
  nlohmann::ordered_json j;
  j["x"] = s.X.get_str();
  j["y"] = s.Y.get_str();
  j["z"] = s.Z.get_str();
  j["k"] = s.k.get_str();
  j["source"] = source;
  if (curve)
    j["curve"] = {{"pencil", std::string(to_string(curve->pencil))},
                  {"param", {curve->param[0].get_str(), curve->param[1].get_str()}}};
  else
    j["curve"] = nullptr;
  j["class"] = cls;
  return j;
}

inline std::string csv_header() { return "x,y,z,k,source,pencil,param,class"; }

inline std::string record_csv(const CanonicalSolution& s, const std::string& source,
                              const std::optional<FiberKey>& curve, const std::string& cls) {
  std::string out = s.X.get_str() + "," + s.Y.get_str() + "," + s.Z.get_str() + "," + s.k.get_str() + "," + source + ",";
  if (curve) out += std::string(to_string(curve->pencil)) + "," + curve->param[0].get_str() + ":" + curve->param[1].get_str();
  else out += ",";
  return out + "," + cls;
}

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, std::string format) : out_(out), csv_(format == "csv") {
    if (csv_) out_ << csv_header() << '\n';
  }
  void write(const CanonicalSolution& s, const std::string& source, const std::optional<FiberKey>& curve,
             const std::string& cls) {
    if (csv_) out_ << record_csv(s, source, curve, cls) << '\n';
    else out_ << record_json(s, source, curve, cls).dump() << '\n';
  }
  void write(const CascadeRecord& r) { write(r.sol, r.source, r.curve, r.cls); }

 private:
  std::ostream& out_;
  bool csv_;
};

inline nlohmann::ordered_json report_json(const DensityReport& rep) {
  nlohmann::ordered_json j;
  j["total_solutions"] = rep.total_solutions;
  j["distinct_fibers"] = rep.distinct_fibers;
  j["fibers_with_3"] = rep.fibers_with_3;
  auto& pp = j["per_pencil"];
  pp = nlohmann::ordered_json::object();
  for (const auto& [pen, t] : rep.per_pencil)
    pp[pen] = {{"fibers_tried", t.fibers_tried},
               {"fibers_with_orbit", t.fibers_with_orbit},
               {"fibers_with_3", t.fibers_with_3},
               {"window_misses", t.window_misses}};
  auto& ex = j["exceptions"];
  ex = nlohmann::ordered_json::array();
  for (const auto& e : rep.exceptions)
    ex.push_back({{"n", e.n}, {"pencil", e.pencil}, {"param", e.param}, {"kind", e.kind}, {"message", e.message}});
  return j;
}

}  // namespace fermat
