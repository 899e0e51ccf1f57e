#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vcmin/extractor.hpp"
#include "vcmin/generators.hpp"
#include "vcmin/instance.hpp"
#include "vcmin/oracle.hpp"
#include "vcmin/random.hpp"

namespace vcmin {

// Oracle column: absent (not requested), inconclusive, or the optimum.
struct OracleField {
  bool requested = false;
  std::optional<std::size_t> min_side;  // empty when inconclusive

  std::string text() const {
    if (!requested) return "";
    return min_side ? std::to_string(*min_side) : "inconclusive";
  }
};

// One extraction outcome. The guarantee flag is derived from the sizes.
struct ResultRecord {
  std::string id;
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::size_t bound = 0;
  std::size_t out_left = 0;
  std::size_t out_right = 0;
  std::string kind;  // complete | empty | error
  std::vector<std::string> branches;
  std::string error;
  OracleField oracle;
  std::uint64_t micros = 0;

  bool guarantee_ok() const {
    return error.empty() && kind != "error" && out_left > 0 && out_right > 0 &&
           meets_fraction(out_left, n_left, bound) && meets_fraction(out_right, n_right, bound);
  }

  std::string branch_string() const {
    std::string s;
    for (std::size_t i = 0; i < branches.size(); ++i) s += (i ? ";" : "") + branches[i];
    return s;
  }

  // Single-line machine record.
  std::string json_line() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["n_left"] = n_left;
    j["n_right"] = n_right;
    j["bound"] = bound;
    j["out_left"] = out_left;
    j["out_right"] = out_right;
    j["kind"] = kind;
    j["branches"] = branches;
    j["guarantee_ok"] = guarantee_ok();
    if (!oracle.requested)
      j["oracle_minside"] = nullptr;
    else if (oracle.min_side)
      j["oracle_minside"] = *oracle.min_side;
    else
      j["oracle_minside"] = "inconclusive";
    if (!error.empty()) j["error"] = error;
    j["micros"] = micros;
    return j.dump();
  }
};

inline const char* kCsvHeader =
    "instance_id,kind,seed,n_left,n_right,bound_N,out_left,out_right,rect_kind,branches,guarantee_ok,"
    "oracle_minside,micros";

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string csv_row(const ResultRecord& r) {
  std::ostringstream os;
  os << csv_escape(r.id) << ',' << r.generator << ',' << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.n_left
     << ',' << r.n_right << ',' << r.bound << ',' << r.out_left << ',' << r.out_right << ',' << r.kind << ','
     << csv_escape(r.error.empty() ? r.branch_string() : "error: " + r.error) << ','
     << (r.guarantee_ok() ? "true" : "false") << ',' << r.oracle.text() << ',' << r.micros;
  return os.str();
}

struct RunOptions {
  ExtractOptions extract;
  bool oracle = false;
  OracleBudget budget;
  bool timing = true;
};

// Extracts and fills a record; library errors become an "error" row.
inline ResultRecord run_record(const ExtractionInstance& inst, std::string id, const RunOptions& opts,
                               std::string generator = {}, std::optional<std::uint64_t> seed = {},
                               ExtractionResult* keep = nullptr) {
  ResultRecord r;
  r.id = std::move(id);
  r.generator = std::move(generator);
  r.seed = seed;
  r.n_left = inst.left_size;
  r.n_right = inst.right_size;
  r.bound = inst.bound;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto res = extract(inst, opts.extract);
    r.out_left = res.rectangle.left.size();
    r.out_right = res.rectangle.right.size();
    r.kind = to_string(res.rectangle.kind);
    for (auto b : res.trace.branches()) r.branches.emplace_back(to_string(b));
    if (keep != nullptr) *keep = std::move(res);
  } catch (const Error& e) {
    r.kind = "error";
    r.error = e.what();
  }
  if (opts.timing)
    r.micros = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count());
  if (opts.oracle) {
    r.oracle.requested = true;
    auto best = brute_best_rectangle(inst, opts.budget);
    if (best.status == RectangleSearch::Status::found) r.oracle.min_side = best.min_side();
  }
  return r;
}

// Sides for one --sizes entry: "S" (S x S) or "LxR".
inline std::pair<std::size_t, std::size_t> parse_size(const std::string& s) {
  auto parse = [&](const std::string& t) -> std::size_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw MalformedInput("bad size '" + s + "'");
    return static_cast<std::size_t>(std::stoull(t));
  };
  auto x = s.find('x');
  if (x == std::string::npos) {
    auto v = parse(s);
    return {v, v};
  }
  return {parse(s.substr(0, x)), parse(s.substr(x + 1))};
}

struct BenchPlan {
  std::vector<GeneratorKind> kinds{GeneratorKind::laminar_flip};
  std::vector<std::pair<std::size_t, std::size_t>> sizes{{16, 16}};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::uint32_t branching = 3;
  std::size_t depth = 3;
  std::size_t max_flips = 3;
  std::size_t jobs = 1;
};

// Instance i (kinds outermost, then sizes, then trials) uses seed
// SplitMix64::derive(plan.seed, i). Rows come back in instance order
// whatever the number of worker threads.
inline std::vector<ResultRecord> run_bench(const BenchPlan& plan, const RunOptions& opts) {
  std::vector<GeneratorSpec> specs;
  for (auto kind : plan.kinds)
    for (auto [l, r] : plan.sizes)
      for (std::size_t t = 0; t < plan.trials; ++t) {
        GeneratorSpec g;
        g.kind = kind;
        g.left = l;
        g.right = r;
        g.branching = plan.branching;
        g.depth = plan.depth;
        g.max_flips = plan.max_flips;
        g.seed = SplitMix64::derive(plan.seed, specs.size());
        specs.push_back(g);
      }
  std::vector<ResultRecord> rows(specs.size());
  auto work = [&](std::size_t i) {
    const auto& g = specs[i];
    try {
      rows[i] = run_record(generate(g), std::to_string(i), opts, to_string(g.kind), g.seed);
    } catch (const Error& e) {
      ResultRecord r;
      r.id = std::to_string(i);
      r.generator = to_string(g.kind);
      r.seed = g.seed;
      r.n_left = g.left;
      r.n_right = g.right;
      r.kind = "error";
      r.error = e.what();
      rows[i] = std::move(r);
    }
  };
  const auto jobs = std::max<std::size_t>(1, std::min(plan.jobs, specs.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (auto i = next++; i < specs.size(); i = next++) work(i);
      });
  }
  return rows;
}

inline std::string bench_csv(const std::vector<ResultRecord>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

}  // namespace vcmin
