#include "cantor/io.hpp"

#include <fstream>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor::io {

namespace {

std::size_t line_at(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

/// Line of the first occurrence of "key" in the text (1 when absent).
std::size_t line_of_key(std::string_view text, const std::string& key) {
  const auto at = text.find("\"" + key + "\"");
  return at == std::string_view::npos ? 1 : line_at(text, at);
}

[[noreturn]] void fail(std::string_view text, const std::string& key, const std::string& what) {
  throw InputError("line " + std::to_string(line_of_key(text, key)) + ": " + what);
}

std::vector<int> int_list(std::string_view text, const Json& j, const std::string& key) {
  if (!j.is_array()) fail(text, key, "\"" + key + "\" must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(text, key, "\"" + key + "\" must be an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

const Json& member(std::string_view text, const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(text, key, "missing \"" + key + "\"");
  return *it;
}

System odometer_from(std::string_view text, const Json& o) {
  if (!o.is_object()) fail(text, "odometer", "\"odometer\" must be an object");
  const auto prefix = o.contains("prefix") ? int_list(text, o["prefix"], "prefix") : std::vector<int>{};
  const auto period = int_list(text, member(text, o, "period"), "period");
  if (period.empty()) fail(text, "period", "\"period\" must be nonempty");
  for (int b : prefix)
    if (b < 2) fail(text, "prefix", "bases must be at least 2");
  for (int b : period)
    if (b < 2) fail(text, "period", "bases must be at least 2");
  return System::odometer(prefix, period);
}

System bv_from(std::string_view text, const Json& o) {
  if (!o.is_object()) fail(text, "bv", "\"bv\" must be an object");
  const auto vertices = int_list(text, member(text, o, "vertices"), "vertices");
  const Json& edges = member(text, o, "edges");
  const Json& ps = member(text, o, "period_start");
  if (!ps.is_number_integer() || ps.get<long long>() < 0) fail(text, "period_start", "\"period_start\" must be a level index");
  if (!edges.is_array() || edges.size() != vertices.size())
    fail(text, "edges", "\"edges\" needs one edge list per entry of \"vertices\"");
  std::vector<LevelSpec> levels;
  for (std::size_t l = 0; l < vertices.size(); ++l) {
    LevelSpec spec{vertices[l], {}};
    if (!edges[l].is_array()) fail(text, "edges", "edge list of level " + std::to_string(l) + " must be an array");
    for (const auto& e : edges[l]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer())
        fail(text, "edges", "edges are [src, dst, order] at level " + std::to_string(l));
      spec.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    levels.push_back(std::move(spec));
  }
  try {
    return System::diagram(std::move(levels), ps.get<std::size_t>());
  } catch (const InputError& e) {
    fail(text, "bv", e.what());
  }
}

System stationary_from(std::string_view text, const Json& o) {
  if (!o.is_array() || o.empty()) fail(text, "stationary", "\"stationary\" must be a square matrix");
  std::vector<std::vector<int>> m;
  for (const auto& row : o) m.push_back(int_list(text, row, "stationary"));
  try {
    return System::stationary(m);
  } catch (const InputError& e) {
    fail(text, "stationary", e.what());
  }
}

}  // namespace

System parse_system(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("line " + std::to_string(line_at(text, e.byte ? e.byte - 1 : 0)) + ": malformed JSON");
  }
  if (!j.is_object() || j.size() != 1) throw InputError("line 1: expected one of \"odometer\", \"bv\", \"stationary\"");
  const auto& [kind, body] = *j.items().begin();
  try {
    if (kind == "odometer") return odometer_from(text, body);
    if (kind == "bv") return bv_from(text, body);
    if (kind == "stationary") return stationary_from(text, body);
  } catch (const Json::exception& e) {
    fail(text, kind, e.what());
  }
  fail(text, kind, "unknown system kind \"" + kind + "\"");
}

System load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_system(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.what());
  }
}

Json system_to_json(const System& sys) {
  if (sys.is_odometer()) return {{"odometer", {{"prefix", sys.base_prefix()}, {"period", sys.base_period()}}}};
  Json vertices = Json::array(), edges = Json::array();
  for (const auto& spec : sys.space()->level_specs()) {
    vertices.push_back(spec.vertices);
    Json list = Json::array();
    for (const auto& e : spec.edges) list.push_back({e.src, e.dst, e.order});
    edges.push_back(std::move(list));
  }
  return {{"bv", {{"vertices", vertices}, {"edges", edges}, {"period_start", sys.space()->period_start()}}}};
}

Json element_to_json(const PiecewisePower& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back({{"domain", to_literal(p.domain)}, {"power", p.power}});
  return {{"pieces", pieces}};
}

PiecewisePower element_from_json(const System& sys, const Json& j) {
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw InputError("element must be {\"pieces\": [...]}");
  std::vector<Piece> pieces;
  for (const auto& p : j["pieces"]) {
    if (!p.is_object() || !p.contains("domain") || !p["domain"].is_string() || !p.contains("power") ||
        !p["power"].is_number_integer())
      throw InputError("pieces are {\"domain\": literal, \"power\": integer}");
    pieces.push_back({parse_clopen(sys.space(), p["domain"].get<std::string>()), p["power"].get<std::int64_t>()});
  }
  return validate_piecewise(sys, pieces);
}

Json perm_to_json(const TowerPermutation& tp) { return {{"level", tp.level}, {"perms", tp.perms}}; }

TowerPermutation perm_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("perms"))
    throw InputError("tower permutation must be {\"level\": n, \"perms\": [[...]]}");
  try {
    return {j["level"].get<std::size_t>(), j["perms"].get<std::vector<std::vector<std::uint32_t>>>()};
  } catch (const Json::exception& e) {
    throw InputError(std::string("tower permutation: ") + e.what());
  }
}

Json partition_to_json(const KRPartition& xi) {
  Json towers = Json::array();
  for (const auto& t : xi.towers) {
    Json floors = Json::array();
    for (const auto& f : t.floors) floors.push_back(to_literal(f));
    towers.push_back(std::move(floors));
  }
  return {{"level", xi.level}, {"towers", towers}};
}

KRPartition partition_from_json(const System& sys, const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("towers") || !j["towers"].is_array())
    throw InputError("partition must be {\"level\": n, \"towers\": [[...]]}");
  KRPartition xi;
  xi.level = j["level"].get<std::size_t>();
  for (const auto& t : j["towers"]) {
    Tower tower;
    for (const auto& f : t) tower.floors.push_back(parse_clopen(sys.space(), f.get<std::string>()));
    if (tower.floors.empty()) throw InputError("empty tower");
    xi.towers.push_back(std::move(tower));
  }
  return xi;
}

Json stacking_to_json(const StackingMap& sm) { return {{"order", sm.order}, {"mult", sm.mult}}; }

StackingMap stacking_from_json(const Json& j) {
  try {
    return {j.at("order").get<std::vector<std::vector<std::size_t>>>(),
            j.at("mult").get<std::vector<std::vector<std::uint64_t>>>()};
  } catch (const Json::exception& e) {
    throw InputError(std::string("stacking map: ") + e.what());
  }
}

std::string rational_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace cantor::io
