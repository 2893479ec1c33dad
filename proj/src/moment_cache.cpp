#include "sgue/moments.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sgue {

using nlohmann::json;

namespace {

const char* var_name(Variables v) { return v == Variables::original ? "original" : "scaled"; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json params_json(const ModelParams& p, Variables v, std::size_t count, unsigned bits) {
  return json{{"N", p.N},
              {"z", to_string(p.z)},
              {"t", to_string(p.t)},
              {"variables", var_name(v)},
              {"count", count},
              {"mantissa_bits", bits}};
}

}  // namespace

MomentCache::MomentCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path MomentCache::default_dir() {
  if (const char* s = std::getenv("SGUE_CACHE_DIR"); s && *s) return s;
  return ".sgue-cache";
}

std::filesystem::path MomentCache::path_for(const ModelParams& p, Variables v, std::size_t count,
                                            unsigned bits) const {
  std::string key = params_json(p, v, count, bits).dump();
  std::ostringstream name;
  name << "moments-" << var_name(v) << "-N" << p.N << "-b" << bits << "-" << std::hex << fnv1a(key) << ".json";
  return dir_ / name.str();
}

std::optional<MomentTable> MomentCache::load(const ModelParams& p, Variables v, std::size_t count,
                                             unsigned bits) const {
  auto path = path_for(p, v, count, bits);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (j.at("params") != params_json(p, v, count, bits)) return std::nullopt;
    MomentTable t;
    t.params = p;
    t.variables = v;
    t.mantissa_bits = bits;
    for (const auto& s : j.at("entries")) t.entries.push_back(real_from_string(s.get<std::string>()));
    for (const auto& s : j.at("error_bounds")) t.error_bounds.push_back(real_from_string(s.get<std::string>()));
    if (t.entries.size() != count || t.error_bounds.size() != count) return std::nullopt;
    return t;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entry: recompute and overwrite
  }
}

void MomentCache::store(const MomentTable& t) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  json j;
  j["params"] = params_json(t.params, t.variables, t.entries.size(), t.mantissa_bits);
  j["entries"] = json::array();
  j["error_bounds"] = json::array();
  for (const auto& x : t.entries) j["entries"].push_back(to_string(x));
  for (const auto& x : t.error_bounds) j["error_bounds"].push_back(to_string(x));
  auto path = path_for(t.params, t.variables, t.entries.size(), t.mantissa_bits);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;  // cache is best effort
    out << j.dump(1);
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace sgue
