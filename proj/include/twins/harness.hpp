#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twins/builder.hpp"
#include "twins/constructions.hpp"
#include "twins/core.hpp"
#include "twins/io.hpp"
#include "twins/oracle.hpp"
#include "twins/parallel.hpp"
#include "twins/random.hpp"
#include "twins/reductions.hpp"
#include "twins/sequences.hpp"

namespace twins {

inline constexpr const char* kVersion = "twins 1.0.0";
inline constexpr const char* kOutDirEnv = "TWIN_OUT_DIR";

// ---------------------------------------------------------------------------
// Configuration

struct GridPoint {
  int n = 0;
  int r = 0;
  int m = 0;
  std::string kind;          // tables: F, F_weak, F_string
  std::vector<int> profile;  // blockclaims: block letters x

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    if (!kind.empty()) j["kind"] = kind;
    if (n) j["n"] = n;
    if (r) j["r"] = r;
    if (m) j["m"] = m;
    if (!profile.empty()) j["x"] = profile;
    return j;
  }
};

struct Budgets {
  std::uint64_t max_states = 50'000'000;
  std::uint64_t max_enumerations = 1ULL << 21;
  double soft_limit_seconds = 3600.0;
  int max_block_length = 15;
};

struct SuiteConfig {
  std::string suite;
  std::vector<GridPoint> grid;
  int samples = 1;
  std::uint64_t seed = 0;
  bool has_seed = false;
  Budgets budgets;
  std::string out_dir;  // empty: write no files
  unsigned jobs = 1;

  OracleBudget oracle_budget() const {
    return {budgets.max_states, budgets.max_enumerations, jobs};
  }

  void validate() const {
    static const std::vector<std::string> suites{"guarantees", "tables", "twinbound",
                                                 "lcs-tail", "blockclaims"};
    if (std::find(suites.begin(), suites.end(), suite) == suites.end())
      throw ConfigError("suite", "unknown suite '" + suite + "'");
    if (grid.empty()) throw ConfigError("grid", "no parameter points");
    if (samples < 1) throw ConfigError("samples", "must be positive");
    if (!has_seed) throw ConfigError("seed", "a master seed is required");
    if (budgets.max_states == 0) throw ConfigError("budgets.max_states", "must be positive");
    if (budgets.max_enumerations == 0)
      throw ConfigError("budgets.max_enumerations", "must be positive");
    if (!(budgets.soft_limit_seconds > 0))
      throw ConfigError("budgets.soft_limit_seconds", "must be positive");
    if (budgets.max_block_length < 1)
      throw ConfigError("budgets.max_block_length", "must be positive");
    if (jobs < 1) throw ConfigError("jobs", "must be positive");
    for (const auto& p : grid) {
      if (suite == "guarantees" && (p.n < 1 || p.r < 1))
        throw ConfigError("grid", "guarantees needs n >= 1 and r >= 1");
      if (suite == "tables") {
        if (p.kind != "F" && p.kind != "F_weak" && p.kind != "F_string")
          throw ConfigError("grid.kind", "expected F, F_weak or F_string");
        if (p.n < 1 || (p.kind != "F_weak" && p.r < 1))
          throw ConfigError("grid", "tables needs n >= 1 (and r >= 1)");
      }
      if (suite == "twinbound" && (p.r < 1 || p.m < 1))
        throw ConfigError("grid", "twinbound needs r and m");
      if (suite == "lcs-tail" && p.r < 1) throw ConfigError("grid", "lcs-tail needs r >= 1");
      if (suite == "blockclaims" && p.profile.empty())
        throw ConfigError("grid", "blockclaims needs a profile x");
    }
  }
};

namespace detail {

template <typename T>
T config_field(const nlohmann::json& j, const char* key, T fallback,
               const std::string& path) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + key, e.what());
  }
}

inline std::vector<int> int_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  try {
    if (v.is_array()) return v.get<std::vector<int>>();
    return {v.get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

// All words over [letters] with 1 <= length <= max_m whose block length fits.
inline std::vector<std::vector<int>> profiles_up_to(int letters, std::vector<int> ms,
                                                    int max_length) {
  std::vector<std::vector<int>> out;
  for (int m : ms) {
    std::vector<int> x(static_cast<std::size_t>(m), 1);
    for (;;) {
      long long len = 0;
      for (int l : x) len += static_cast<long long>(std::pow(3, l));
      if (len <= max_length) out.push_back(x);
      int pos = m - 1;
      while (pos >= 0 && x[pos] == letters) x[pos--] = 1;
      if (pos < 0) break;
      ++x[pos];
    }
  }
  return out;
}

}  // namespace detail

// Builds a config from JSON. Grid points come either from an explicit
// "grid" array of objects or from the cartesian product of the list fields
// "kind", "n", "r", "m". For blockclaims without a grid, every profile over
// [r] of each length in "m" that fits max_block_length is used.
inline SuiteConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  SuiteConfig cfg;
  cfg.suite = detail::config_field<std::string>(j, "suite", "", "");
  cfg.samples = detail::config_field<int>(j, "samples", 1, "");
  if (j.contains("seed")) {
    cfg.seed = detail::config_field<std::uint64_t>(j, "seed", 0, "");
    cfg.has_seed = true;
  }
  cfg.out_dir = detail::config_field<std::string>(j, "out", "", "");
  cfg.jobs = detail::config_field<unsigned>(j, "jobs", 1, "");
  if (j.contains("budgets")) {
    const auto& b = j.at("budgets");
    cfg.budgets.max_states =
        detail::config_field<std::uint64_t>(b, "max_states", cfg.budgets.max_states, "budgets.");
    cfg.budgets.max_enumerations = detail::config_field<std::uint64_t>(
        b, "max_enumerations", cfg.budgets.max_enumerations, "budgets.");
    cfg.budgets.soft_limit_seconds = detail::config_field<double>(
        b, "soft_limit_seconds", cfg.budgets.soft_limit_seconds, "budgets.");
    cfg.budgets.max_block_length = detail::config_field<int>(
        b, "max_block_length", cfg.budgets.max_block_length, "budgets.");
  }
  if (j.contains("grid")) {
    if (!j.at("grid").is_array()) throw ConfigError("grid", "expected an array");
    for (const auto& p : j.at("grid")) {
      GridPoint g;
      g.n = detail::config_field<int>(p, "n", 0, "grid.");
      g.r = detail::config_field<int>(p, "r", 0, "grid.");
      g.m = detail::config_field<int>(p, "m", 0, "grid.");
      g.kind = detail::config_field<std::string>(p, "kind", "", "grid.");
      g.profile = detail::config_field<std::vector<int>>(p, "x", {}, "grid.");
      cfg.grid.push_back(std::move(g));
    }
  } else if (cfg.suite == "blockclaims") {
    auto rs = detail::int_list(j, "r");
    for (const auto& x : detail::profiles_up_to(rs.empty() ? 2 : rs.front(),
                                                detail::int_list(j, "m"),
                                                cfg.budgets.max_block_length))
      cfg.grid.push_back(GridPoint{0, 0, 0, "", x});
  } else {
    std::vector<std::string> kinds{""};
    if (j.contains("kind")) {
      try {
        kinds = j.at("kind").is_array() ? j.at("kind").get<std::vector<std::string>>()
                                        : std::vector{j.at("kind").get<std::string>()};
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("kind", e.what());
      }
    }
    auto ns = detail::int_list(j, "n"), rs = detail::int_list(j, "r"),
         ms = detail::int_list(j, "m");
    if (ns.empty()) ns = {0};
    if (rs.empty()) rs = {0};
    if (ms.empty()) ms = {0};
    for (const auto& k : kinds)
      for (int n : ns)
        for (int r : rs)
          for (int m : ms) {
            if (k == "F_weak" && r != rs.front()) continue;  // r is irrelevant
            cfg.grid.push_back(GridPoint{n, k == "F_weak" ? 0 : r, m, k, {}});
          }
    if (ns == std::vector{0} && rs == std::vector{0} && ms == std::vector{0})
      cfg.grid.clear();
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Reports

enum class Status { pass, fail, error, resource, probe };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    case Status::resource: return "resource";
    case Status::probe: return "probe";
  }
  return "?";
}

struct CaseRecord {
  std::string id;  // "<suite>:<index>", accepted by --replay
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Status status = Status::pass;
  std::string detail;
  std::string witness_file;
  nlohmann::ordered_json fields;  // suite-specific, in CSV column order
};

struct RunReport {
  std::string suite;
  std::string version = kVersion;
  std::uint64_t master_seed = 0;
  std::vector<std::string> columns;
  std::vector<CaseRecord> cases;
  nlohmann::ordered_json aggregate;  // suite-level derived values
  double seconds = 0;                // wall time; never serialized

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(std::count_if(
        cases.begin(), cases.end(), [s](const auto& c) { return c.status == s; }));
  }
  bool failed() const { return count(Status::fail) + count(Status::error) > 0; }
  int exit_code() const { return failed() ? 1 : 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["version"] = version;
    j["seed"] = master_seed;
    nlohmann::ordered_json counts;
    for (Status s : {Status::pass, Status::fail, Status::error, Status::resource,
                     Status::probe})
      counts[to_string(s)] = count(s);
    j["counts"] = counts;
    j["aggregate"] = aggregate;
    j["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : cases) {
      nlohmann::ordered_json rec;
      rec["id"] = c.id;
      rec["seed"] = c.seed;
      rec["status"] = to_string(c.status);
      if (!c.detail.empty()) rec["detail"] = c.detail;
      if (!c.witness_file.empty()) rec["witness_file"] = c.witness_file;
      rec["fields"] = c.fields;
      j["cases"].push_back(rec);
    }
    return j;
  }

  void write_csv(std::ostream& out) const {
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
    out << '\n';
    for (const auto& c : cases) {
      for (std::size_t k = 0; k < columns.size(); ++k) {
        const auto& col = columns[k];
        std::string cell;
        if (col == "case_id") cell = c.id;
        else if (col == "seed") cell = std::to_string(c.seed);
        else if (col == "status") cell = to_string(c.status);
        else if (col == "witness_file") cell = c.witness_file;
        else if (c.fields.contains(col)) {
          const auto& v = c.fields.at(col);
          cell = v.is_string() ? v.get<std::string>() : v.dump();
          if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
        }
        out << (k ? "," : "") << cell;
      }
      out << '\n';
    }
  }

  void write_summary(std::ostream& out) const {
    out << "suite " << suite << " (" << version << ", seed " << master_seed << ")\n";
    out << std::left << std::setw(10) << "cases" << std::setw(8) << "pass" << std::setw(8)
        << "fail" << std::setw(8) << "error" << std::setw(10) << "resource" << std::setw(8)
        << "probe" << "seconds\n";
    out << std::setw(10) << cases.size() << std::setw(8) << count(Status::pass)
        << std::setw(8) << count(Status::fail) << std::setw(8) << count(Status::error)
        << std::setw(10) << count(Status::resource) << std::setw(8)
        << count(Status::probe) << std::fixed << std::setprecision(2) << seconds << '\n';
    for (const auto& [k, v] : aggregate.items()) out << "  " << k << ": " << v.dump() << '\n';
    int shown = 0;
    for (const auto& c : cases) {
      if (c.status == Status::pass || c.status == Status::probe) continue;
      if (++shown > 20) {
        out << "  ...\n";
        break;
      }
      out << "  " << to_string(c.status) << " " << c.id << ": " << c.detail;
      if (!c.witness_file.empty()) out << " [" << c.witness_file << "]";
      out << "  (replay: --replay " << c.id << ")\n";
    }
  }

  // <out>/<suite>.csv and <out>/<suite>.json
  void write_files(const std::string& out_dir) const {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir + "/" + suite + ".csv");
    write_csv(csv);
    std::ofstream js(out_dir + "/" + suite + ".json");
    js << to_json().dump(2) << '\n';
  }
};

// ---------------------------------------------------------------------------
// Suites

struct CasePlan {
  std::size_t index = 0;
  const GridPoint* point = nullptr;
  int sample = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<CasePlan> plan_cases(const SuiteConfig& cfg, bool per_sample) {
  std::vector<CasePlan> plan;
  for (const auto& p : cfg.grid)
    for (int s = 0; s < (per_sample ? cfg.samples : 1); ++s) {
      const std::size_t idx = plan.size();
      plan.push_back({idx, &p, s, case_seed(cfg.seed, idx)});
    }
  return plan;
}

inline std::string witness_path(const SuiteConfig& cfg, const std::string& name) {
  if (cfg.out_dir.empty()) return {};
  const auto dir = cfg.out_dir + "/witness";
  std::filesystem::create_directories(dir);
  return dir + "/" + name;
}

using CaseFn = std::function<void(const CasePlan&, CaseRecord&)>;

inline CaseRecord run_one(const SuiteConfig& cfg, const CasePlan& plan, const CaseFn& fn) {
  CaseRecord rec;
  rec.index = plan.index;
  rec.id = cfg.suite + ":" + std::to_string(plan.index);
  rec.seed = plan.seed;
  rec.fields = plan.point->to_json();
  try {
    fn(plan, rec);
  } catch (const ResourceError& e) {
    rec.status = Status::resource;
    rec.detail = e.what();
  } catch (const std::exception& e) {
    rec.status = Status::error;
    rec.detail = e.what();
  }
  return rec;
}

inline RunReport run_cases(const SuiteConfig& cfg, const std::vector<CasePlan>& plan,
                           std::vector<std::string> columns, const CaseFn& fn,
                           unsigned jobs) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RunReport rep;
  rep.suite = cfg.suite;
  rep.master_seed = cfg.seed;
  rep.columns = std::move(columns);
  rep.cases.resize(plan.size());
  parallel_for(plan.size(), jobs, [&](std::size_t i) {
    const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
    if (elapsed > cfg.budgets.soft_limit_seconds) {
      CaseRecord& rec = rep.cases[i];
      rec.index = i;
      rec.id = cfg.suite + ":" + std::to_string(i);
      rec.seed = plan[i].seed;
      rec.fields = plan[i].point->to_json();
      rec.status = Status::resource;
      rec.detail = "wall-clock soft limit reached before case start";
      return;
    }
    rep.cases[i] = run_one(cfg, plan[i], fn);
  });
  rep.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return rep;
}

inline int general_bound(int n, int r) {
  return std::max(n / (r * r + 1), std::min(1, n / 2));
}

inline int binary_bound(int n) {
  if (n >= 4) return n / 4;
  return n >= 2 ? 1 : 0;
}

// --- guarantees ------------------------------------------------------------

inline CaseFn guarantees_case(const SuiteConfig& cfg) {
  return [&cfg](const CasePlan& plan, CaseRecord& rec) {
    const int n = plan.point->n, r = plan.point->r;
    const auto c = random_coloring(n, r, plan.seed);
    std::vector<std::string> problems;

    const auto general = build_twin_general(c);
    const int gb = general_bound(n, r);
    rec.fields["general_size"] = general.twin.size();
    rec.fields["general_bound"] = gb;
    if (auto v = validate_twin(c, general.twin); !v)
      problems.push_back("general builder twin invalid: " + to_string(v));
    if (static_cast<int>(general.twin.size()) < gb)
      problems.push_back("general builder below bound");

    if (r == 2) {
      const auto binary = build_twin_binary(c);
      const int bb = binary_bound(n);
      rec.fields["binary_size"] = binary.twin.size();
      rec.fields["binary_bound"] = bb;
      if (auto v = validate_twin(c, binary.twin); !v)
        problems.push_back("binary builder twin invalid: " + to_string(v));
      if (static_cast<int>(binary.twin.size()) < bb)
        problems.push_back("binary builder below bound");
    }
    if (!problems.empty()) {
      rec.status = Status::fail;
      for (const auto& p : problems) rec.detail += (rec.detail.empty() ? "" : "; ") + p;
      rec.witness_file = witness_path(cfg, "guarantees-" + std::to_string(plan.index) + ".col");
      if (!rec.witness_file.empty()) save_file(rec.witness_file, write_coloring, c);
    }
  };
}

// --- tables ----------------------------------------------------------------

inline CaseFn tables_case(const SuiteConfig& cfg) {
  return [&cfg](const CasePlan& plan, CaseRecord& rec) {
    const auto& p = *plan.point;
    const auto budget = cfg.oracle_budget();
    rec.fields["r"] = p.kind == "F_weak" ? nlohmann::ordered_json("") : nlohmann::ordered_json(p.r);
    std::vector<std::string> problems;
    if (p.kind == "F") {
      auto res = exact_F(p.n, p.r, budget);
      rec.fields["value"] = res.value;
      if (res.value > p.n / 2) problems.push_back("exceeds floor(n/2)");
      if (p.n == 2 && res.value != 1) problems.push_back("F(2,r) != 1");
      if (p.r == 1 && res.value != p.n / 2) problems.push_back("F(n,1) != floor(n/2)");
      if (p.r == 2 && res.value < p.n / 4) problems.push_back("below floor(n/4)");
      rec.witness_file = witness_path(
          cfg, "F_n" + std::to_string(p.n) + "_r" + std::to_string(p.r) + ".col");
      if (!rec.witness_file.empty()) save_file(rec.witness_file, write_coloring, res.minimizer);
    } else if (p.kind == "F_weak") {
      auto res = exact_F_weak(p.n, budget);
      rec.fields["value"] = res.value;
      if (res.value > p.n / 2) problems.push_back("exceeds floor(n/2)");
      rec.witness_file = witness_path(cfg, "F_weak_n" + std::to_string(p.n) + ".perm");
      if (!rec.witness_file.empty())
        save_file(rec.witness_file, write_permutation, res.minimizer);
    } else {
      auto res = exact_F_string(p.n, p.r, budget);
      rec.fields["value"] = res.value;
      if (res.value > p.n / 2) problems.push_back("exceeds floor(n/2)");
      rec.witness_file = witness_path(
          cfg, "F_string_n" + std::to_string(p.n) + "_r" + std::to_string(p.r) + ".str");
      if (!rec.witness_file.empty()) save_file(rec.witness_file, write_string, res.minimizer);
    }
    if (!problems.empty()) {
      rec.status = Status::fail;
      for (const auto& s : problems) rec.detail += (rec.detail.empty() ? "" : "; ") + s;
    }
  };
}

// F_2(n) <= F^weak(n) across rows of one report.
inline void tables_cross_check(RunReport& rep) {
  std::map<int, int> weak;
  for (const auto& c : rep.cases)
    if (c.fields.value("kind", "") == "F_weak" && c.fields.contains("value"))
      weak[c.fields["n"].get<int>()] = c.fields["value"].get<int>();
  int checked = 0;
  for (auto& c : rep.cases) {
    if (c.fields.value("kind", "") != "F" || !c.fields.contains("value")) continue;
    if (c.fields["r"] != 2) continue;
    const int n = c.fields["n"].get<int>();
    auto it = weak.find(n);
    if (it == weak.end()) continue;
    ++checked;
    if (c.fields["value"].get<int>() > it->second) {
      c.status = Status::fail;
      c.detail += (c.detail.empty() ? "" : "; ") + std::string("F_2(n) > F_weak(n)");
    }
  }
  rep.aggregate["weak_cross_checks"] = checked;
}

// --- twinbound -------------------------------------------------------------

struct TwinboundOutcome {
  int f = 0, fstring_x = 0, fstring_y = 0, max_lcs = 0, rhs = 0;
  std::uint64_t twins_checked = 0;
  std::vector<std::string> problems;
};

// Twin enumeration is exhaustive up to this many vertices; beyond it only
// the oracle's witness is decomposed.
inline constexpr int kTwinboundEnumerateLimit = 14;

inline TwinboundOutcome check_twinbound(const CompositeSpec& spec, const OracleBudget& budget) {
  TwinboundOutcome out;
  const auto c = composite_coloring(spec);
  const auto best = max_twin(c, Engine::compressed, budget);
  out.f = best.size;
  out.fstring_x = max_string_twin(spec.x, budget).size;
  out.fstring_y = max_string_twin(spec.y, budget).size;
  out.max_lcs = max_pairwise_lcs(spec);
  out.rhs = spec.m + 2 * out.fstring_y * spec.r + (2 * out.fstring_x + 1) * (out.max_lcs + 1);
  if (out.f > out.rhs) out.problems.push_back("f(c) exceeds the composite bound");

  auto check = [&](const TwinPair& t) {
    ++out.twins_checked;
    const auto d = decompose_composite_twin(spec, c, t);
    auto s = d.structural_violation(spec, t.size());
    if (s.empty()) s = decomposition_bound_violation(spec, d, out.fstring_x, out.fstring_y);
    if (!s.empty() && out.problems.size() < 5) {
      std::ostringstream os;
      os << s << " for I=";
      for (Index i : t.first) os << i << ' ';
      os << "J=";
      for (Index j : t.second) os << j << ' ';
      out.problems.push_back(os.str());
    }
  };
  if (spec.n() <= kTwinboundEnumerateLimit)
    for_each_twin(c, check);
  else if (best.size > 0)
    check(best.witness);
  return out;
}

inline CaseFn twinbound_case(const SuiteConfig& cfg) {
  return [&cfg](const CasePlan& plan, CaseRecord& rec) {
    const auto spec = random_composite_spec(plan.point->r, plan.point->m, plan.seed);
    rec.fields["n"] = spec.n();
    const auto o = check_twinbound(spec, cfg.oracle_budget());
    rec.fields["f"] = o.f;
    rec.fields["fstring_x"] = o.fstring_x;
    rec.fields["fstring_y"] = o.fstring_y;
    rec.fields["max_lcs"] = o.max_lcs;
    rec.fields["rhs"] = o.rhs;
    rec.fields["twins_checked"] = o.twins_checked;
    if (!o.problems.empty()) {
      rec.status = Status::fail;
      for (const auto& s : o.problems) rec.detail += (rec.detail.empty() ? "" : "; ") + s;
      rec.witness_file = witness_path(cfg, "twinbound-" + std::to_string(plan.index) + ".json");
      if (!rec.witness_file.empty())
        std::ofstream(rec.witness_file) << to_json(spec).dump(2) << '\n';
    }
  };
}

// --- lcs-tail --------------------------------------------------------------

inline CaseFn lcs_tail_case() {
  return [](const CasePlan& plan, CaseRecord& rec) {
    const int r = plan.point->r;
    Rng rng(plan.seed);
    const auto a = random_permutation(rng, r);
    const auto b = random_permutation(rng, r);
    const int lcs = lcs_length(a, b);
    const double threshold = 3.0 * std::sqrt(static_cast<double>(r));
    rec.fields["lcs"] = lcs;
    rec.fields["threshold"] = threshold;
    rec.fields["exceeds"] = lcs > threshold;
    rec.status = Status::probe;
  };
}

inline void lcs_tail_aggregate(RunReport& rep) {
  std::map<int, std::pair<int, int>> per_r;  // r -> (pairs, exceedances)
  std::map<int, int> max_lcs;
  for (const auto& c : rep.cases) {
    if (c.status != Status::probe) continue;
    const int r = c.fields["r"].get<int>();
    auto& e = per_r[r];
    ++e.first;
    if (c.fields["exceeds"].get<bool>()) ++e.second;
    max_lcs[r] = std::max(max_lcs[r], c.fields["lcs"].get<int>());
  }
  for (const auto& [r, e] : per_r) {
    const auto key = "r=" + std::to_string(r);
    rep.aggregate[key] = {{"pairs", e.first},
                          {"exceedances", e.second},
                          {"rate", static_cast<double>(e.second) / e.first},
                          {"max_lcs", max_lcs[r]}};
  }
}

// --- blockclaims -----------------------------------------------------------

struct BlockClaimsOutcome {
  std::uint64_t twins = 0;
  BlockClaimViolations violations;
};

// Enumerates every twin of block_coloring(p), sharded by first index.
inline BlockClaimsOutcome check_block_profile(const BlockProfile& p, unsigned jobs) {
  const auto c = block_coloring(p);
  std::vector<BlockClaimsOutcome> shards(static_cast<std::size_t>(c.n()));
  parallel_for(shards.size(), jobs, [&](std::size_t s) {
    auto& out = shards[s];
    for_each_twin(
        c,
        [&](const TwinPair& t) {
          ++out.twins;
          out.violations += check_block_claims(p, t);
        },
        1, static_cast<Index>(s + 1));
  });
  BlockClaimsOutcome total;
  for (const auto& s : shards) {
    total.twins += s.twins;
    total.violations += s.violations;
  }
  return total;
}

inline CaseFn blockclaims_case(const SuiteConfig& cfg) {
  return [&cfg](const CasePlan& plan, CaseRecord& rec) {
    const auto& x = plan.point->profile;
    const int letters = *std::max_element(x.begin(), x.end());
    const BlockProfile p(LetterString(letters, x));
    rec.fields["length"] = p.length();
    if (p.length() > cfg.budgets.max_block_length)
      throw ResourceError("block profile length exceeds max_block_length",
                          static_cast<std::uint64_t>(p.length()),
                          static_cast<std::uint64_t>(cfg.budgets.max_block_length));
    if (p.length() < 2) throw ArgumentError("block profile needs L_m >= 2");
    const auto o = check_block_profile(p, cfg.jobs);
    rec.fields["twins"] = o.twins;
    rec.fields["shape"] = o.violations.shape;
    rec.fields["loop_parity"] = o.violations.loop_parity;
    rec.fields["dominance"] = o.violations.dominance;
    rec.fields["endpoints"] = o.violations.endpoints;
    if (o.violations.total() > 0) {
      rec.status = Status::fail;
      rec.detail = "structural claim violated";
    }
  };
}

}  // namespace detail

inline const std::vector<std::string>& suite_columns(const std::string& suite) {
  static const std::map<std::string, std::vector<std::string>> cols{
      {"guarantees",
       {"case_id", "n", "r", "seed", "general_size", "general_bound", "binary_size",
        "binary_bound", "status"}},
      {"tables", {"kind", "n", "r", "value", "witness_file"}},
      {"twinbound",
       {"case_id", "r", "m", "n", "seed", "f", "fstring_x", "fstring_y", "max_lcs", "rhs",
        "twins_checked", "status"}},
      {"lcs-tail", {"case_id", "r", "seed", "lcs", "threshold", "exceeds"}},
      {"blockclaims",
       {"case_id", "x", "length", "twins", "shape", "loop_parity", "dominance", "endpoints",
        "status"}},
  };
  auto it = cols.find(suite);
  if (it == cols.end()) throw ConfigError("suite", "unknown suite '" + suite + "'");
  return it->second;
}

namespace detail {

struct SuiteDef {
  bool per_sample;
  CaseFn fn;
  unsigned case_jobs;
  std::function<void(RunReport&)> finalize;
};

inline SuiteDef suite_def(const SuiteConfig& cfg) {
  if (cfg.suite == "guarantees") return {true, guarantees_case(cfg), cfg.jobs, {}};
  // exact_F* shard internally
  if (cfg.suite == "tables") return {false, tables_case(cfg), 1, tables_cross_check};
  if (cfg.suite == "twinbound") return {true, twinbound_case(cfg), cfg.jobs, {}};
  if (cfg.suite == "lcs-tail") return {true, lcs_tail_case(), cfg.jobs, lcs_tail_aggregate};
  if (cfg.suite == "blockclaims") return {false, blockclaims_case(cfg), 1, {}};
  throw ConfigError("suite", "unknown suite '" + cfg.suite + "'");
}

}  // namespace detail

inline RunReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  auto def = detail::suite_def(cfg);
  auto plan = detail::plan_cases(cfg, def.per_sample);
  auto rep = detail::run_cases(cfg, plan, suite_columns(cfg.suite), def.fn, def.case_jobs);
  if (def.finalize) def.finalize(rep);
  rep.write_files(cfg.out_dir);
  return rep;
}

inline RunReport cmd_guarantees(SuiteConfig cfg) {
  cfg.suite = "guarantees";
  return run_suite(cfg);
}
inline RunReport cmd_tables(SuiteConfig cfg) {
  cfg.suite = "tables";
  return run_suite(cfg);
}
inline RunReport cmd_twinbound(SuiteConfig cfg) {
  cfg.suite = "twinbound";
  return run_suite(cfg);
}
inline RunReport cmd_lcs_tail(SuiteConfig cfg) {
  cfg.suite = "lcs-tail";
  return run_suite(cfg);
}
inline RunReport cmd_blockclaims(SuiteConfig cfg) {
  cfg.suite = "blockclaims";
  return run_suite(cfg);
}

// Re-runs the single case "<suite>:<index>" of the configured suite. Output
// files are not written.
inline RunReport cmd_replay(SuiteConfig cfg, const std::string& case_id) {
  const auto colon = case_id.rfind(':');
  if (colon == std::string::npos)
    throw ConfigError("replay", "case id must look like <suite>:<index>");
  const std::string suite = case_id.substr(0, colon);
  std::size_t index = 0;
  try {
    index = std::stoull(case_id.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("replay", "bad case index in '" + case_id + "'");
  }
  if (!cfg.suite.empty() && cfg.suite != suite)
    throw ConfigError("replay", "case belongs to suite '" + suite + "', config is '" +
                                    cfg.suite + "'");
  cfg.suite = suite;
  cfg.validate();
  auto def = detail::suite_def(cfg);
  auto plan = detail::plan_cases(cfg, def.per_sample);
  if (index >= plan.size())
    throw ConfigError("replay", "case index out of range (suite has " +
                                    std::to_string(plan.size()) + " cases)");
  auto rep = detail::run_cases(cfg, {plan[index]}, suite_columns(suite), def.fn, 1);
  rep.cases[0].index = index;
  rep.cases[0].id = case_id;
  if (def.finalize) def.finalize(rep);
  return rep;
}

}  // namespace twins
