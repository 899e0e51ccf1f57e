#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcmin/cheese.hpp"
#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/extractor.hpp"
#include "vcmin/instance.hpp"
#include "vcmin/laminar.hpp"
#include "vcmin/version.hpp"

namespace vcmin::io {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kFormatVersion = 1;

// Parsed instance file. `has_decompositions` / `has_bound` record what the
// file carried before missing parts were filled in.
struct InstanceFile {
  ExtractionInstance instance;
  std::optional<InstanceMetadata> metadata;
  bool has_decompositions = false;
  bool has_bound = false;
};

namespace detail {

inline void require_keys(const Json& obj, const char* what, std::initializer_list<const char*> allowed,
                         std::initializer_list<const char*> required) {
  if (!obj.is_object()) throw MalformedInput(std::string(what) + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto* k : allowed) known = known || it.key() == k;
    if (!known) throw MalformedInput(std::string(what) + ": unknown field '" + it.key() + "'");
  }
  for (auto* k : required)
    if (!obj.contains(k)) throw MalformedInput(std::string(what) + ": missing field '" + k + "'");
}

inline std::uint64_t as_count(const Json& v, const std::string& what) {
  if (!v.is_number_unsigned()) throw MalformedInput(what + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

inline std::vector<std::size_t> as_index_list(const Json& v, const std::string& what) {
  if (!v.is_array()) throw MalformedInput(what + " must be an array of indices");
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(static_cast<std::size_t>(as_count(x, what + " entry")));
  return out;
}

inline ElementSet as_set(const Json& v, std::size_t ground, const std::string& what) {
  auto idx = as_index_list(v, what);
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] <= idx[i - 1]) throw MalformedInput(what + " must be strictly ascending");
  try {
    return ElementSet::from_members(ground, idx);
  } catch (const MalformedInput& e) {
    throw MalformedInput(what + ": " + e.what());
  }
}

inline Json set_json(const ElementSet& s) {
  Json arr = Json::array();
  s.for_each([&](std::size_t i) { arr.push_back(i); });
  return arr;
}

}  // namespace detail

inline Json instance_to_json(const ExtractionInstance& inst, const std::optional<InstanceMetadata>& meta = {}) {
  Json j;
  j["version"] = kFormatVersion;
  j["ground_size"] = inst.right_size;
  Json balls = Json::array();
  for (const auto& b : inst.family.balls()) balls.push_back(detail::set_json(b));
  j["balls"] = std::move(balls);
  j["left_size"] = inst.left_size;
  Json adj = Json::array();
  for (const auto& a : inst.adjacency) adj.push_back(detail::set_json(a));
  j["adjacency"] = std::move(adj);
  Json decomps = Json::array();
  for (const auto& d : inst.decomps) {
    Json cheeses = Json::array();
    for (const auto& ch : d.cheeses) {
      Json c;
      c["outer"] = *inst.family.index_of(ch.outer);
      Json holes = Json::array();
      for (const auto& h : ch.holes) holes.push_back(*inst.family.index_of(h));
      c["holes"] = std::move(holes);
      cheeses.push_back(std::move(c));
    }
    decomps.push_back(std::move(cheeses));
  }
  j["decompositions"] = std::move(decomps);
  j["bound"] = inst.bound;
  if (meta) {
    Json m;
    m["generator"] = meta->generator;
    if (meta->seed)
      m["seed"] = *meta->seed;
    else
      m["seed"] = nullptr;
    m["version"] = kToolVersion;
    j["metadata"] = std::move(m);
  }
  return j;
}

inline std::string serialize_instance(const ExtractionInstance& inst, const std::optional<InstanceMetadata>& meta = {}) {
  return instance_to_json(inst, meta).dump() + "\n";
}

// Parses and validates. Missing decompositions are computed optimally;
// a missing bound becomes one more than the largest decomposition
// complexity. Throws MalformedInput, NotDirected, Inexpressible or
// ValidationError.
inline InstanceFile instance_from_json(const Json& j) {
  detail::require_keys(j, "instance",
                       {"version", "ground_size", "balls", "left_size", "adjacency", "decompositions", "bound",
                        "metadata"},
                       {"version", "ground_size", "balls", "left_size", "adjacency"});
  if (detail::as_count(j["version"], "version") != kFormatVersion)
    throw MalformedInput("unsupported instance format version " + j["version"].dump());
  InstanceFile file;
  auto& inst = file.instance;
  inst.right_size = detail::as_count(j["ground_size"], "ground_size");
  inst.left_size = detail::as_count(j["left_size"], "left_size");

  const auto& balls_json = j["balls"];
  if (!balls_json.is_array()) throw MalformedInput("balls must be an array");
  std::vector<ElementSet> balls;
  for (std::size_t i = 0; i < balls_json.size(); ++i) {
    auto b = detail::as_set(balls_json[i], inst.right_size, "balls[" + std::to_string(i) + "]");
    if (b.empty()) throw MalformedInput("balls[" + std::to_string(i) + "] is empty");
    for (std::size_t k = 0; k < balls.size(); ++k)
      if (balls[k] == b)
        throw MalformedInput("balls[" + std::to_string(i) + "] duplicates balls[" + std::to_string(k) + "]");
    balls.push_back(std::move(b));
  }
  inst.family = DirectedFamily(inst.right_size, balls);

  const auto& adj_json = j["adjacency"];
  if (!adj_json.is_array() || adj_json.size() != inst.left_size)
    throw MalformedInput("adjacency must list exactly left_size neighbourhoods");
  for (std::size_t a = 0; a < inst.left_size; ++a)
    inst.adjacency.push_back(detail::as_set(adj_json[a], inst.right_size, "adjacency[" + std::to_string(a) + "]"));

  if (j.contains("metadata")) {
    const auto& m = j["metadata"];
    detail::require_keys(m, "metadata", {"generator", "seed", "version"}, {});
    InstanceMetadata meta;
    if (m.contains("generator")) {
      if (!m["generator"].is_string()) throw MalformedInput("metadata.generator must be a string");
      meta.generator = m["generator"].get<std::string>();
    }
    if (m.contains("seed") && !m["seed"].is_null()) meta.seed = detail::as_count(m["seed"], "metadata.seed");
    if (m.contains("version") && !m["version"].is_string())
      throw MalformedInput("metadata.version must be a string");
    file.metadata = meta;
  }

  file.has_bound = j.contains("bound");
  if (file.has_bound) inst.bound = detail::as_count(j["bound"], "bound");

  file.has_decompositions = j.contains("decompositions");
  if (file.has_decompositions) {
    const auto& dj = j["decompositions"];
    if (!dj.is_array() || dj.size() != inst.left_size)
      throw MalformedInput("decompositions must list exactly left_size entries");
    std::size_t worst = 0;
    for (std::size_t a = 0; a < inst.left_size; ++a) {
      const std::string who = "decompositions[" + std::to_string(a) + "]";
      if (!dj[a].is_array()) throw MalformedInput(who + " must be an array of cheeses");
      CheeseDecomposition d{inst.right_size, {}};
      for (const auto& cj : dj[a]) {
        detail::require_keys(cj, who.c_str(), {"outer", "holes"}, {"outer", "holes"});
        auto ball = [&](const Json& v) -> const ElementSet& {
          const auto i = detail::as_count(v, who + " ball index");
          if (i >= balls.size()) throw MalformedInput(who + ": ball index " + std::to_string(i) + " out of range");
          return balls[i];
        };
        SwissCheese ch{ball(cj["outer"]), {}};
        if (!cj["holes"].is_array()) throw MalformedInput(who + ": holes must be an array");
        for (const auto& h : cj["holes"]) ch.holes.push_back(ball(h));
        d.cheeses.push_back(std::move(ch));
      }
      worst = std::max(worst, d.complexity());
      inst.decomps.push_back(std::move(d));
    }
    if (!file.has_bound) inst.bound = worst + 1;
  } else {
    complete_decompositions(inst, !file.has_bound);
  }
  validate(inst);
  return file;
}

inline InstanceFile parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MalformedInput("cannot write '" + path + "'");
  out << text;
  if (!out) throw MalformedInput("failed writing '" + path + "'");
}

inline InstanceFile load_instance(const std::string& path) { return parse_instance(read_file(path)); }

inline Json rectangle_to_json(const HomogeneousRectangle& r) {
  Json j;
  j["version"] = kFormatVersion;
  Json left = Json::array();
  for (auto a : r.left) left.push_back(a);
  j["left"] = std::move(left);
  j["right"] = detail::set_json(r.right);
  j["kind"] = to_string(r.kind);
  return j;
}

inline std::string serialize_rectangle(const HomogeneousRectangle& r) { return rectangle_to_json(r).dump() + "\n"; }

inline HomogeneousRectangle parse_rectangle(const std::string& text, std::size_t right_size) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("rectangle is not valid JSON: ") + e.what());
  }
  detail::require_keys(j, "rectangle", {"version", "left", "right", "kind"}, {"version", "left", "right", "kind"});
  if (detail::as_count(j["version"], "version") != kFormatVersion)
    throw MalformedInput("unsupported rectangle format version");
  HomogeneousRectangle r;
  r.left = detail::as_index_list(j["left"], "left");
  for (std::size_t i = 1; i < r.left.size(); ++i)
    if (r.left[i] <= r.left[i - 1]) throw MalformedInput("left must be strictly ascending");
  r.right = detail::as_set(j["right"], right_size, "right");
  if (!j["kind"].is_string()) throw MalformedInput("kind must be a string");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "complete")
    r.kind = RectKind::complete;
  else if (kind == "empty")
    r.kind = RectKind::empty;
  else
    throw MalformedInput("kind must be 'complete' or 'empty'");
  return r;
}

inline Json trace_level_to_json(const TraceLevel& l, std::size_t depth) {
  Json j;
  j["level"] = depth;
  j["bound"] = l.bound;
  j["branch"] = to_string(l.branch);
  j["left_before"] = l.left_before;
  j["right_before"] = l.right_before;
  if (l.z) j["z"] = detail::set_json(*l.z);
  if (l.branch != Branch::base) {
    Json maximal = Json::array();
    for (const auto& c : l.maximal) maximal.push_back(detail::set_json(c));
    j["maximal"] = std::move(maximal);
  }
  if (l.remainder) j["remainder"] = detail::set_json(*l.remainder);
  if (l.t0) j["t0"] = *l.t0;
  if (l.c) j["c"] = detail::set_json(*l.c);
  if (l.c) {
    j["a1_size"] = l.a1_size;
    j["a2_size"] = l.a2_size;
  }
  j["left_after"] = l.left_after;
  j["right_after"] = l.right_after;
  return j;
}

}  // namespace vcmin::io
