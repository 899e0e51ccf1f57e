// vcmin: generate instances, compute complexity, extract homogeneous
// rectangles, verify them and benchmark the guarantee against the optimum.
//
// Exit codes: 0 success, 1 verification counterexample, 2 validation or
// usage error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcmin/vcmin.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitInvalid = 2;

std::string indexed_path(const std::string& path, std::size_t index, std::size_t count) {
  if (count == 1) return path;
  std::filesystem::path p(path);
  std::ostringstream name;
  name << p.stem().string() << '_' << std::setw(4) << std::setfill('0') << index << p.extension().string();
  return (p.parent_path() / name.str()).string();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct GenArgs {
  std::string kind = "laminar-flip";
  std::size_t left = 16;
  std::size_t right = 16;
  std::uint32_t p = 3;
  std::size_t depth = 3;
  std::size_t max_flips = 3;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t count = 1;
  bool allow_empty = false;
};

int cmd_gen(const GenArgs& args) {
  vcmin::GeneratorSpec spec;
  spec.kind = vcmin::parse_generator_kind(args.kind);
  spec.left = args.left;
  spec.right = args.right;
  spec.branching = args.p;
  spec.depth = args.depth;
  spec.max_flips = args.max_flips;
  spec.nonempty = !args.allow_empty;
  if (args.count == 0) throw vcmin::MalformedInput("--count must be positive");
  for (std::size_t i = 0; i < args.count; ++i) {
    spec.seed = args.count == 1 ? args.seed : vcmin::SplitMix64::derive(args.seed, i);
    auto inst = vcmin::generate(spec);
    const vcmin::InstanceMetadata meta{args.kind, spec.seed};
    const auto text = vcmin::io::serialize_instance(inst, meta);
    // Written files must read back to the same instance.
    if (!(vcmin::io::parse_instance(text).instance == inst))
      throw vcmin::InvariantViolation("generated instance does not survive a serialization round trip");
    const auto path = indexed_path(args.out, i, args.count);
    vcmin::io::write_file(path, text);
    std::cerr << "wrote " << path << '\n';
  }
  return kExitOk;
}

int cmd_complexity(const std::string& input, bool pretty) {
  auto file = vcmin::io::load_instance(input);
  const auto per_vertex = vcmin::vertex_complexities(file.instance);
  std::size_t worst = 0;
  for (auto c : per_vertex) worst = std::max(worst, c);
  if (pretty) {
    std::cout << std::left << std::setw(10) << "vertex" << "complexity\n";
    for (std::size_t a = 0; a < per_vertex.size(); ++a) std::cout << std::setw(10) << a << per_vertex[a] << '\n';
    std::cout << "max complexity " << worst << ", least valid N " << worst + 1 << '\n';
    return kExitOk;
  }
  for (std::size_t a = 0; a < per_vertex.size(); ++a)
    std::cout << "{\"vertex\":" << a << ",\"complexity\":" << per_vertex[a] << "}\n";
  std::cout << "{\"max_complexity\":" << worst << ",\"least_bound\":" << worst + 1 << "}\n";
  return kExitOk;
}

struct ExtractArgs {
  std::string input;
  std::string rect_out;
  std::string id;
  bool trace = false;
  bool check_claims = false;
  bool oracle = false;
  bool debug = false;
  bool no_timing = false;
  bool pretty = false;
};

int cmd_extract(const ExtractArgs& args) {
  auto file = vcmin::io::load_instance(args.input);
  const auto& inst = file.instance;
  vcmin::RunOptions opts;
  opts.extract.check_claims = args.check_claims;
  opts.extract.debug = args.debug;
  opts.oracle = args.oracle;
  opts.budget = vcmin::OracleBudget::from_env();
  opts.timing = !args.no_timing;
  const auto id = args.id.empty() ? std::filesystem::path(args.input).stem().string() : args.id;

  vcmin::ExtractionResult result;
  auto record = vcmin::run_record(inst, id, opts, file.metadata ? file.metadata->generator : "",
                                  file.metadata ? file.metadata->seed : std::nullopt, &result);
  // Extraction errors exit 2 before any record is printed.
  if (!record.error.empty()) throw vcmin::ValidationError(record.error);

  if (args.pretty) {
    std::cout << "instance " << record.id << ": |X| = " << record.n_left << ", |Y| = " << record.n_right
              << ", N = " << record.bound << '\n'
              << "rectangle " << record.kind << ": |X'| = " << record.out_left << ", |Y'| = " << record.out_right
              << '\n'
              << "branches " << record.branch_string() << '\n'
              << "guarantee " << (record.guarantee_ok() ? "satisfied" : "VIOLATED") << '\n';
    if (record.oracle.requested) std::cout << "oracle best min side " << record.oracle.text() << '\n';
  } else {
    std::cout << record.json_line() << '\n';
  }
  if (args.trace)
    for (std::size_t i = 0; i < result.trace.levels.size(); ++i)
      std::cout << vcmin::io::trace_level_to_json(result.trace.levels[i], i).dump() << '\n';
  if (!args.rect_out.empty()) vcmin::io::write_file(args.rect_out, vcmin::io::serialize_rectangle(result.rectangle));
  return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& rect_path) {
  auto file = vcmin::io::load_instance(input);
  auto rect = vcmin::io::parse_rectangle(vcmin::io::read_file(rect_path), file.instance.right_size);
  auto verdict = vcmin::verify_rectangle(file.instance, rect);
  if (verdict.valid) {
    std::cout << "valid\n";
    return kExitOk;
  }
  std::cout << "counterexample " << verdict.counterexample->first << ' ' << verdict.counterexample->second << '\n';
  return kExitCounterexample;
}

struct BenchArgs {
  std::size_t trials = 1;
  std::string sizes = "16";
  std::string kinds = "laminar-flip";
  std::uint64_t seed = 0;
  std::string out;
  std::uint32_t p = 3;
  std::size_t depth = 3;
  std::size_t max_flips = 3;
  std::size_t jobs = 1;
  bool no_oracle = false;
  bool no_timing = false;
  bool check_claims = false;
};

int cmd_bench(const BenchArgs& args) {
  vcmin::BenchPlan plan;
  plan.kinds.clear();
  for (const auto& k : split_list(args.kinds)) plan.kinds.push_back(vcmin::parse_generator_kind(k));
  plan.sizes.clear();
  for (const auto& s : split_list(args.sizes)) plan.sizes.push_back(vcmin::parse_size(s));
  if (plan.kinds.empty() || plan.sizes.empty()) throw vcmin::MalformedInput("--kinds and --sizes must be nonempty");
  plan.trials = args.trials;
  plan.seed = args.seed;
  plan.branching = args.p;
  plan.depth = args.depth;
  plan.max_flips = args.max_flips;
  plan.jobs = args.jobs;
  vcmin::RunOptions opts;
  opts.extract.check_claims = args.check_claims;
  opts.oracle = !args.no_oracle;
  opts.budget = vcmin::OracleBudget::from_env();
  opts.timing = !args.no_timing;
  const auto rows = vcmin::run_bench(plan, opts);
  vcmin::io::write_file(args.out, vcmin::bench_csv(rows));
  std::size_t ok = 0;
  for (const auto& r : rows) ok += r.guarantee_ok() ? 1 : 0;
  std::cerr << rows.size() << " rows, " << ok << " guarantee_ok, wrote " << args.out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swiss cheese complexity and homogeneous rectangle extraction"};
  app.set_version_flag("--version", vcmin::kToolVersion);
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instance files");
  gen_cmd->add_option("--kind", gen.kind, "forest | padic | laminar-flip")
      ->check(CLI::IsMember({"forest", "padic", "laminar-flip"}));
  gen_cmd->add_option("--left", gen.left, "|X|")->required();
  gen_cmd->add_option("--right", gen.right, "|Y|")->required();
  gen_cmd->add_option("--p", gen.p, "Branching / digit base");
  gen_cmd->add_option("--depth", gen.depth, "Ball nesting depth");
  gen_cmd->add_option("--max-flips", gen.max_flips, "Flips per left vertex (bound N = K + 1)");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output path; with --count, _NNNN is inserted before the extension")
      ->required();
  gen_cmd->add_option("--count", gen.count, "Number of instances (seeds split from --seed)");
  gen_cmd->add_flag("--allow-empty", gen.allow_empty, "Keep flip samples whose neighbourhood is empty");

  std::string cx_input;
  bool cx_pretty = false;
  auto* cx_cmd = app.add_subcommand("complexity", "Per-vertex minimal complexity and least valid N");
  cx_cmd->add_option("-i,--input", cx_input, "Instance file")->required();
  cx_cmd->add_flag("--pretty", cx_pretty, "Human-readable table");

  ExtractArgs ex;
  auto* ex_cmd = app.add_subcommand("extract", "Extract a homogeneous rectangle");
  ex_cmd->add_option("-i,--input", ex.input, "Instance file")->required();
  ex_cmd->add_option("-o,--rect-out", ex.rect_out, "Write the rectangle file here");
  ex_cmd->add_option("--id", ex.id, "Record id (default: input file stem)");
  ex_cmd->add_flag("--trace", ex.trace, "Print one JSON line per recursion level");
  ex_cmd->add_flag("--check-claims", ex.check_claims, "Check both homogeneity claims at every level");
  ex_cmd->add_flag("--oracle", ex.oracle, "Append the exhaustive optimum when within budget");
  ex_cmd->add_flag("--debug", ex.debug, "Re-minimize restricted neighbourhoods at every recursion");
  ex_cmd->add_flag("--no-timing", ex.no_timing, "Report micros as 0 for byte-stable output");
  ex_cmd->add_flag("--pretty", ex.pretty, "Human-readable summary");

  std::string vf_input;
  std::string vf_rect;
  auto* vf_cmd = app.add_subcommand("verify", "Check a rectangle against an instance");
  vf_cmd->add_option("-i,--input", vf_input, "Instance file")->required();
  vf_cmd->add_option("-r,--rect", vf_rect, "Rectangle file")->required();

  BenchArgs bn;
  auto* bn_cmd = app.add_subcommand("bench", "Generate, extract and compare with the optimum; writes CSV");
  bn_cmd->add_option("--trials", bn.trials, "Instances per (kind, size)");
  bn_cmd->add_option("--sizes", bn.sizes, "Comma list of S or LxR");
  bn_cmd->add_option("--kinds", bn.kinds, "Comma list of generator kinds");
  bn_cmd->add_option("--seed", bn.seed, "64-bit seed")->required();
  bn_cmd->add_option("--out", bn.out, "CSV output path")->required();
  bn_cmd->add_option("--p", bn.p, "Branching / digit base");
  bn_cmd->add_option("--depth", bn.depth, "Ball nesting depth");
  bn_cmd->add_option("--max-flips", bn.max_flips, "Flips per left vertex");
  bn_cmd->add_option("--jobs", bn.jobs, "Worker threads (row order is unaffected)");
  bn_cmd->add_flag("--no-oracle", bn.no_oracle, "Skip the exhaustive optimum");
  bn_cmd->add_flag("--no-timing", bn.no_timing, "Report micros as 0 for byte-stable output");
  bn_cmd->add_flag("--check-claims", bn.check_claims, "Check both homogeneity claims at every level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*cx_cmd) return cmd_complexity(cx_input, cx_pretty);
    if (*ex_cmd) return cmd_extract(ex);
    if (*vf_cmd) return cmd_verify(vf_input, vf_rect);
    if (*bn_cmd) return cmd_bench(bn);
  } catch (const vcmin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
