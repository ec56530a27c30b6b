// fermat3: integer points on x^3 + y^3 + z^3 = k.

#include <fermat/cascade.hpp>
#include <fermat/checks.hpp>
#include <fermat/pell.hpp>
#include <fermat/pencils.hpp>
#include <fermat/records.hpp>
#include <fermat/search.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace fermat;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned jobs_from_env(unsigned fallback) {
  if (const char* v = std::getenv("FERMAT3_JOBS")) {
    try {
      long n = std::stol(v);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("FERMAT3_JOBS must be a positive integer, got '") + v + "'");
  }
  return fallback;
}

std::vector<BigInt> parse_list(const std::string& s, std::size_t expected, const std::string& what) {
  std::vector<BigInt> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_bigint(item));
    } catch (const Error&) {
      throw UsageError(what + ": '" + item + "' is not an integer");
    }
  }
  if (out.size() != expected) throw UsageError(what + " needs " + std::to_string(expected) + " comma-separated integers");
  return out;
}

PencilParam parse_param(const std::string& s) {
  auto v = parse_list(s, 2, "--param");
  if (v[0] == 0 && v[1] == 0) throw UsageError("--param must not be 0,0");
  return make_param(v[0], v[1]);
}

std::string fmt(const Rat& q) { return q.get_str(); }

int cmd_search(const std::string& k, long bound, unsigned jobs, bool include_trivial, const std::string& format) {
  BigInt K;
  try {
    K = parse_bigint(k);
  } catch (const Error&) {
    throw UsageError("--k must be an integer");
  }
  if (bound < 1) throw UsageError("--bound must be positive");
  RecordWriter out(std::cout, format);
  for (const auto& s : enumerate(K, bound, jobs_from_env(jobs))) {
    auto c = classify(s);
    if (c.trivial && !include_trivial) continue;
    out.write(s, "search", std::nullopt, c.tag());
  }
  return kOk;
}

std::optional<std::array<BigInt, 3>> parse_triple_line(const std::string& line) {
  std::string s = line;
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos || s[b] == '#') return std::nullopt;
  if (s[b] == '{') {
    auto j = nlohmann::json::parse(s);
    auto get = [&](const char* key) {
      const auto& v = j.at(key);
      return v.is_string() ? parse_bigint(v.get<std::string>()) : parse_bigint(v.dump());
    };
    return std::array<BigInt, 3>{get("x"), get("y"), get("z")};
  }
  for (auto& ch : s)
    if (ch == ',' || ch == '\t' || ch == ';') ch = ' ';
  std::stringstream ss(s);
  std::array<BigInt, 3> v;
  std::string tok;
  for (auto& x : v) {
    if (!(ss >> tok)) throw Error(ErrorCode::InvalidArgument, "expected three integers");
    x = parse_bigint(tok);
  }
  return v;
}

int cmd_classify(const std::string& input) {
  std::ifstream file;
  if (input != "-") {
    file.open(input);
    if (!file) throw UsageError("cannot open " + input);
  }
  std::istream& in = input == "-" ? std::cin : file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::optional<std::array<BigInt, 3>> v;
    try {
      v = parse_triple_line(line);
    } catch (const std::exception& e) {
      throw UsageError(input + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!v) continue;
    auto s = CanonicalSolution::make((*v)[0], (*v)[1], (*v)[2]);
    auto c = classify(s);
    nlohmann::ordered_json j;
    j["x"] = s.X.get_str();
    j["y"] = s.Y.get_str();
    j["z"] = s.Z.get_str();
    j["k"] = s.k.get_str();
    j["class"] = c.tag();
    j["trivial"] = c.trivial;
    j["lehmer_t"] = c.lehmer_t ? nlohmann::ordered_json(c.lehmer_t->get_str()) : nullptr;
    if (c.linear_alpha) {
      j["linear_alpha"] = c.linear_alpha->get_str();
      j["linear_perm"] = c.linear_perm;
      j["linear_strict"] = c.linear_strict;
    } else {
      j["linear_alpha"] = nullptr;
    }
    std::cout << j.dump() << '\n';
  }
  return kOk;
}

void print_windows(PencilId id) {
  for (const auto& r : window_roots(id, Rat(1, BigInt("100000000000000"))))
    std::cout << "root " << to_decimal((r.lo + r.hi) / 2, 12) << '\n';
}

int cmd_pencil(const std::string& pid, const std::string& praw) {
  PencilId id = parse_pencil(pid);
  auto param = parse_param(praw);
  std::cout << "pencil " << to_string(id) << "\n";
  std::cout << "param " << param.str() << "\n";
  std::cout << "member " << member(id, param).str() << "\n";
  bool degenerate = member_degenerate(id, param);
  std::cout << "degenerate " << (degenerate ? "true" : "false") << "\n";
  std::optional<Rat> closed;
  try {
    Rat u = u_value(id, param);
    std::cout << "u=" << fmt(u) << "\n";
    auto wc = window_check(id, u);
    if (wc.pole) {
      std::cout << "delta_closed pole\n";
    } else {
      closed = discriminant_closed(id, u);
      std::cout << "delta_closed " << fmt(*closed) << "\n";
    }
    std::cout << "window " << (wc.positive ? "true" : "false") << "\n";
    if (wc.in_sufficient_window) std::cout << "sufficient_window " << (*wc.in_sufficient_window ? "true" : "false") << "\n";
  } catch (const Error& e) {
    std::cout << "u " << to_string(e.code()) << "\n";
  }
  auto model = plane_model(id, param);
  auto inf = infinity_data(model);
  std::cout << "delta_geometric " << fmt(inf.delta) << "\n";
  std::cout << "square_class " << inf.square_class_rep << "\n";
  if (closed && *closed != 0 && inf.delta != 0)
    std::cout << "square_class_agrees " << (square_class_equal(*closed, inf.delta) ? "true" : "false") << "\n";
  std::cout << "infinity " << to_string(inf.verdict) << "\n";
  std::cout << "plane " << model.plane.str() << " coefficients (w,x,y,z) = (" << model.plane_coeffs[0] << ","
            << model.plane_coeffs[1] << "," << model.plane_coeffs[2] << "," << model.plane_coeffs[3] << ")\n";
  std::cout << "chart " << model.chart_name() << " modulus " << model.modulus << "\n";
  std::cout << "conic " << model.conic.str() << "\n";
  std::cout << "verdict " << to_string(interi_check(model, std::nullopt)) << "\n";
  if (!degenerate) {
    try {
      std::cout << "infinity_line " << infinity_line(id, param).str() << "\n";
    } catch (const Error& e) {
      std::cout << "infinity_line " << to_string(e.code()) << "\n";
    }
  }
  std::cout << "windows\n";
  print_windows(id);
  return kOk;
}

int cmd_orbit(const std::string& pid, const std::string& praw, const std::string& seed_raw, std::size_t count,
              std::uint64_t budget, const std::string& format) {
  PencilId id = parse_pencil(pid);
  auto param = parse_param(praw);
  auto v = parse_list(seed_raw, 3, "--seed");
  BigInt k = v[0] * v[0] * v[0] + v[1] * v[1] * v[1] + v[2] * v[2] * v[2];
  if (k != 1 && k != -1) throw UsageError("--seed must satisfy x^3+y^3+z^3 = 1 or -1");
  AffineSolution seed{v[0], v[1], v[2], k};
  auto model = plane_model(id, param);
  auto verdict = interi_check(model, seed);
  if (verdict != InteriVerdict::InfiniteGuaranteed) {
    std::cerr << "fermat3: orbit refused: " << to_string(verdict) << "\n";
    return kVerifyFailed;
  }
  RecordWriter out(std::cout, format);
  const FiberKey key{id, param};
  for (const auto& p : orbit(model, seed, count, budget)) {
    // Answer in the model the seed came from, keeping the fiber's coordinate order.
    AffineSolution s = k == 1 ? AffineSolution{-p.X, -p.Y, -p.Z, 1} : p;
    CanonicalSolution rec{s.X, s.Y, s.Z, s.k};
    out.write(rec, "orbit", key, classify(CanonicalSolution::make(-p.X, -p.Y, -p.Z)).tag());
  }
  return kOk;
}

int cmd_cascade(const std::string& path, const std::string& report_path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  CascadeConfig cfg;
  try {
    cfg = parse_config(in);
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
  cfg.jobs = jobs_from_env(cfg.jobs);
  auto res = cascade(cfg);
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw UsageError("cannot write " + cfg.output);
  }
  std::ostream& os = cfg.output.empty() ? std::cout : file;
  RecordWriter out(os, cfg.format);
  for (const auto& r : res.records) out.write(r);
  auto rep = report_json(res.report).dump(2);
  if (report_path.empty()) {
    std::cerr << rep << "\n";
  } else {
    std::ofstream rf(report_path);
    rf << rep << "\n";
  }
  return kOk;
}

int cmd_verify() {
  bool ok = true;
  for (const auto& r : run_all_checks()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer points on the Fermat cubic surface"};
  app.require_subcommand(1);

  std::string k = "1", format = "jsonl", input = "-", pid, param, seed, config, report;
  long bound = 0;
  unsigned jobs = 1;
  bool include_trivial = false;
  std::size_t count = 10;
  std::uint64_t budget = default_pell_budget;

  auto* search = app.add_subcommand("search", "enumerate x^3+y^3+z^3 = k with max |.| <= bound");
  search->add_option("--k", k, "target value")->required();
  search->add_option("--bound", bound, "height bound")->required();
  search->add_option("--jobs", jobs, "worker threads");
  search->add_flag("--include-trivial", include_trivial, "also emit solutions with (x+y)(y+z)(z+x) = 0");
  search->add_option("--format", format)->check(CLI::IsMember({"jsonl", "csv"}));

  auto* cls = app.add_subcommand("classify", "classify triples, one per line");
  cls->add_option("--input", input, "file of triples, - for standard input")->capture_default_str();

  auto* pen = app.add_subcommand("pencil", "describe one pencil member");
  pen->add_option("--id", pid)->required()->check(CLI::IsMember({"C", "D", "E"}));
  pen->add_option("--param", param, "a,b")->required()->allow_extra_args(false);

  auto* win = app.add_subcommand("windows", "roots of the discriminant at infinity");
  win->add_option("--id", pid)->required()->check(CLI::IsMember({"C", "D", "E"}));

  auto* orb = app.add_subcommand("orbit", "orbit of an integer point on a fiber");
  orb->add_option("--pencil", pid)->required()->check(CLI::IsMember({"C", "D", "E"}));
  orb->add_option("--param", param, "a,b")->required();
  orb->add_option("--seed", seed, "x,y,z")->required();
  orb->add_option("--count", count);
  orb->add_option("--pell-budget", budget);
  orb->add_option("--format", format)->check(CLI::IsMember({"jsonl", "csv"}));

  auto* cas = app.add_subcommand("cascade", "run the fiber cascade from a key=value config");
  cas->add_option("--config", config)->required();
  cas->add_option("--report", report, "write the density report here instead of stderr");

  auto* ver = app.add_subcommand("verify", "run the identity and consistency checks");

  // Negative parameters such as "-3,2" must not be read as flags.
  app.allow_extras(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*search) return cmd_search(k, bound, jobs, include_trivial, format);
    if (*cls) return cmd_classify(input);
    if (*pen) return cmd_pencil(pid, param);
    if (*win) {
      print_windows(parse_pencil(pid));
      return kOk;
    }
    if (*orb) return cmd_orbit(pid, param, seed, count, budget, format);
    if (*cas) return cmd_cascade(config, report);
    if (*ver) return cmd_verify();
  } catch (const UsageError& e) {
    std::cerr << "fermat3: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "fermat3: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
