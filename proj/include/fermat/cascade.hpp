#pragma once

#include <fermat/pell.hpp>
#include <fermat/pencils.hpp>
#include <fermat/search.hpp>
#include <fermat/surface.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fermat {

enum class Secondary { D, E, Both };

struct CascadeConfig {
  long n_min = 2;
  long n_max = 10;
  std::size_t c_points = 5;
  Secondary secondary = Secondary::D;
  std::size_t secondary_points = 3;
  std::string output;         // empty: standard output
  std::string format = "jsonl";
  unsigned jobs = 1;
  std::uint64_t pell_budget = default_pell_budget;

  std::vector<PencilId> secondary_pencils() const {
    switch (secondary) {
      case Secondary::D: return {PencilId::D};
      case Secondary::E: return {PencilId::E};
      case Secondary::Both: return {PencilId::D, PencilId::E};
    }
    return {};
  }
};

/// key=value per line; '#' starts a comment.
inline CascadeConfig parse_config(std::istream& in) {
  CascadeConfig cfg;
  std::string line;
  int lineno = 0;
  auto to_long = [&](const std::string& v) {
    std::size_t pos = 0;
    long r = 0;
    try {
      r = std::stol(v, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != v.size()) throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": bad integer '" + v + "'");
    return r;
  };
  auto count = [&](const std::string& v) {
    long r = to_long(v);
    if (r < 0) throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": negative count");
    return static_cast<std::size_t>(r);
  };
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "n_min") cfg.n_min = to_long(val);
    else if (key == "n_max") cfg.n_max = to_long(val);
    else if (key == "c_points") cfg.c_points = count(val);
    else if (key == "secondary_points") cfg.secondary_points = count(val);
    else if (key == "secondary") {
      if (val == "D") cfg.secondary = Secondary::D;
      else if (val == "E") cfg.secondary = Secondary::E;
      else if (val == "both") cfg.secondary = Secondary::Both;
      else throw Error(ErrorCode::InvalidArgument, "secondary must be D, E or both");
    } else if (key == "output") cfg.output = val;
    else if (key == "format") {
      if (val != "jsonl" && val != "csv") throw Error(ErrorCode::InvalidArgument, "format must be jsonl or csv");
      cfg.format = val;
    } else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::max<std::size_t>(1, count(val)));
    else if (key == "pell_budget") cfg.pell_budget = count(val);
    else throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

inline PencilParam c_param(long n) {
  BigInt N(n);
  return make_param(2 * N * N + 1, 1 - N * N);
}

struct CFiberScan {
  long n;
  PencilParam param;
  BigInt delta;  // 12n^6 - 3
  InteriVerdict verdict;
};

inline std::vector<CFiberScan> scan_C_fibers(long n_min, long n_max) {
  std::vector<CFiberScan> out;
  for (long n = n_min; n <= n_max; ++n) {
    BigInt N(n);
    auto param = c_param(n);
    auto model = plane_model(PencilId::C, param);
    auto seed = to_affine(line_seed(N), -1);
    out.push_back({n, param, 12 * N * N * N * N * N * N - 3, interi_check(model, seed)});
  }
  return out;
}

struct FiberKey {
  PencilId pencil;
  PencilParam param;
  auto operator<=>(const FiberKey&) const = default;
};

struct CascadeRecord {
  CanonicalSolution sol;  // x^3+y^3+z^3 = 1
  std::string source;
  std::optional<FiberKey> curve;
  std::string cls;
};

struct CascadeException {
  long n;
  std::string pencil;
  std::string param;
  std::string kind;
  std::string message;
};

struct PencilTally {
  std::size_t fibers_tried = 0;
  std::size_t fibers_with_orbit = 0;
  std::size_t fibers_with_3 = 0;
  std::size_t window_misses = 0;
};

struct DensityReport {
  std::size_t total_solutions = 0;
  std::size_t fibers_with_3 = 0;
  std::size_t distinct_fibers = 0;
  std::map<std::string, PencilTally> per_pencil;
  std::vector<CascadeException> exceptions;
};

namespace detail {

// Everything found from a single C-fiber, in emission order.
struct FiberWork {
  std::vector<CascadeRecord> records;
  std::map<FiberKey, std::vector<CanonicalSolution>> members;
  std::vector<CascadeException> exceptions;
  std::map<std::string, PencilTally> tally;
};

inline CanonicalSolution plus_model(const AffineSolution& s) {
  auto m = to_minus_model(s);
  return CanonicalSolution::make(-m.X, -m.Y, -m.Z);
}

inline FiberWork run_c_fiber(long n, const CascadeConfig& cfg) {
  FiberWork w;
  const auto param = c_param(n);
  const std::string pstr = param.str();
  const FiberKey ckey{PencilId::C, param};
  auto model = plane_model(PencilId::C, param);
  auto seed = *to_affine(line_seed(BigInt(n)), -1);
  auto& ct = w.tally["C"];
  ++ct.fibers_tried;
  auto verdict = interi_check(model, seed);
  if (verdict != InteriVerdict::InfiniteGuaranteed) {
    w.exceptions.push_back({n, "C", pstr, std::string(to_string(verdict)), "C-fiber skipped"});
    return w;
  }
  std::vector<AffineSolution> cpoints;
  try {
    cpoints = orbit(model, seed, cfg.c_points, cfg.pell_budget);
  } catch (const Error& e) {
    w.exceptions.push_back({n, "C", pstr, std::string(to_string(e.code())), e.what()});
    return w;
  }
  ++ct.fibers_with_orbit;
  auto& cm = w.members[ckey];
  cm.push_back(plus_model(seed));
  for (const auto& p : cpoints) {
    auto s = plus_model(p);
    cm.push_back(s);
    w.records.push_back({s, "cascade:C", ckey, ""});
  }
  if (cm.size() >= 3) ++ct.fibers_with_3;

  for (const auto& p : cpoints) {
    const auto plane_pt = blowdown(to_surface(p));
    for (auto id : cfg.secondary_pencils()) {
      const std::string pen(to_string(id));
      auto& tally = w.tally[pen];
      ++tally.fibers_tried;
      PencilParam sp;
      try {
        sp = param_through(id, plane_pt);
      } catch (const Error& e) {
        w.exceptions.push_back({n, pen, plane_pt.str(), std::string(to_string(e.code())), e.what()});
        continue;
      }
      try {
        auto wc = window_check(id, u_value(id, sp));
        if (wc.in_sufficient_window && !*wc.in_sufficient_window) {
          ++tally.window_misses;
          w.exceptions.push_back({n, pen, sp.str(), "WindowMiss", "u outside the sufficient window"});
        }
      } catch (const Error&) {
      }
      try {
        auto sm = plane_model(id, sp);
        auto v = interi_check(sm, p);
        if (v != InteriVerdict::InfiniteGuaranteed) {
          w.exceptions.push_back({n, pen, sp.str(), std::string(to_string(v)), "secondary fiber skipped"});
          continue;
        }
        auto pts = orbit(sm, p, cfg.secondary_points, cfg.pell_budget);
        ++tally.fibers_with_orbit;
        const FiberKey key{id, sp};
        auto& mem = w.members[key];
        mem.push_back(plus_model(p));
        for (const auto& q : pts) {
          auto s = plus_model(q);
          mem.push_back(s);
          w.records.push_back({s, "cascade:" + pen, key, ""});
        }
        if (mem.size() >= 3) ++tally.fibers_with_3;
      } catch (const Error& e) {
        w.exceptions.push_back({n, pen, sp.str(), std::string(to_string(e.code())), e.what()});
      }
    }
  }
  return w;
}

}  // namespace detail

struct CascadeResult {
  std::vector<CascadeRecord> records;  // deduplicated, in (n, fiber, index) order
  DensityReport report;
};

/// Checks a record against the cubic and, when it names a curve, the member through its blowdown.
inline bool record_valid(const CascadeRecord& r) {
  if (!r.sol.holds()) return false;
  if (!r.curve) return true;
  // Fibers live in the minus model; the canonical order may have permuted the
  // coordinates, so any permutation landing on the member is accepted.
  std::array<BigInt, 3> v{-r.sol.X, -r.sol.Y, -r.sol.Z};
  auto mem = member(r.curve->pencil, r.curve->param);
  for (const auto& p : permutations3()) {
    auto q = SurfacePoint::from_coords(1, v[p[0]], v[p[1]], v[p[2]]);
    auto b = blowdown(q);
    std::array<BigInt, 3> pt{b[0], b[1], b[2]};
    if (mem.eval<BigInt>(std::span<const BigInt>(pt)) == 0) return true;
  }
  return false;
}

inline CascadeResult cascade(const CascadeConfig& cfg) {
  CascadeResult res;
  if (cfg.n_max < cfg.n_min) return res;
  const std::size_t count = static_cast<std::size_t>(cfg.n_max - cfg.n_min + 1);
  std::vector<detail::FiberWork> work(count);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) work[i] = detail::run_c_fiber(cfg.n_min + static_cast<long>(i), cfg);
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Sequencer: merge in n order.
  std::set<std::array<std::string, 3>> seen;
  std::map<FiberKey, std::set<std::array<std::string, 3>>> fibers;
  auto& rep = res.report;
  for (auto& w : work) {
    for (auto& r : w.records) {
      if (!record_valid(r))
        throw Error(ErrorCode::PreconditionFailed, "cascade produced an invalid point " + r.sol.str());
      std::array<std::string, 3> key{r.sol.X.get_str(), r.sol.Y.get_str(), r.sol.Z.get_str()};
      if (!seen.insert(key).second) continue;
      r.cls = classify(r.sol).tag();
      res.records.push_back(std::move(r));
    }
    for (auto& [k, sols] : w.members)
      for (auto& s : sols) fibers[k].insert({s.X.get_str(), s.Y.get_str(), s.Z.get_str()});
    for (auto& [pen, t] : w.tally) {
      auto& dst = rep.per_pencil[pen];
      dst.fibers_tried += t.fibers_tried;
      dst.window_misses += t.window_misses;
    }
    rep.exceptions.insert(rep.exceptions.end(), w.exceptions.begin(), w.exceptions.end());
  }
  // Fiber counts are taken over distinct curves, since two C-points can share a secondary fiber.
  for (const auto& [k, sols] : fibers) {
    auto& dst = rep.per_pencil[std::string(to_string(k.pencil))];
    ++dst.fibers_with_orbit;
    if (sols.size() >= 3) {
      ++dst.fibers_with_3;
      ++rep.fibers_with_3;
    }
  }
  rep.distinct_fibers = fibers.size();
  rep.total_solutions = res.records.size();
  return res;
}

}  // namespace fermat
