#include "jsprr/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace jsprr {

using nlohmann::json;

namespace {

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::optional<Position> position(const json& obj) {
  if (obj.contains("x") && obj.contains("y")) return Position{number(obj, "x"), number(obj, "y")};
  return std::nullopt;
}

// Finite doubles only; JSON has no infinity.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const Instance& instance) {
  json doc;
  doc["services"] = json::array();
  for (const auto& s : instance.services)
    doc["services"].push_back({{"id", s.id}, {"r", s.storage}, {"c", s.compute}, {"bu", s.uplink}, {"bd", s.downlink}});
  doc["stations"] = json::array();
  for (const auto& b : instance.stations) {
    json j = {{"id", b.id}, {"R", b.storage_cap}, {"C", b.compute_cap}, {"Bu", b.uplink_cap}, {"Bd", b.downlink_cap}};
    if (b.position) {
      j["x"] = b.position->x;
      j["y"] = b.position->y;
    }
    doc["stations"].push_back(std::move(j));
  }
  doc["users"] = json::array();
  for (const auto& u : instance.users) {
    json j = {{"id", u.id}, {"coverage", u.coverage}, {"service", u.service}};
    if (u.position) {
      j["x"] = u.position->x;
      j["y"] = u.position->y;
    }
    doc["users"].push_back(std::move(j));
  }
  if (instance.previous_placement) {
    const auto& xp = *instance.previous_placement;
    json rows = json::array();
    for (std::size_t n = 0; n < xp.rows(); ++n) {
      json row = json::array();
      for (std::size_t s = 0; s < xp.cols(); ++s) row.push_back(static_cast<int>(xp(n, s)));
      rows.push_back(std::move(row));
    }
    doc["prev_placement"] = std::move(rows);
  }
  if (instance.adaptation_budget) doc["D"] = *instance.adaptation_budget;
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("instance document must be a JSON object");
  for (const char* key : {"services", "stations", "users"})
    if (!doc.contains(key) || !doc.at(key).is_array())
      throw ValidationError(std::string("instance needs array \"") + key + "\"");

  Instance inst;
  for (const auto& j : doc.at("services"))
    inst.services.push_back({integer(j, "id"), number(j, "r"), number(j, "c"), number(j, "bu"), number(j, "bd")});
  for (const auto& j : doc.at("stations"))
    inst.stations.push_back(
        {integer(j, "id"), number(j, "R"), number(j, "C"), number(j, "Bu"), number(j, "Bd"), position(j)});
  for (const auto& j : doc.at("users")) {
    User u;
    u.id = integer(j, "id");
    u.service = integer(j, "service");
    if (!j.contains("coverage") || !j.at("coverage").is_array())
      throw ValidationError("user needs array \"coverage\"");
    for (const auto& c : j.at("coverage")) {
      if (!c.is_number_integer()) throw ValidationError("coverage entries must be integers");
      u.coverage.push_back(c.get<int>());
    }
    u.position = position(j);
    inst.users.push_back(std::move(u));
  }
  if (doc.contains("prev_placement") && !doc.at("prev_placement").is_null()) {
    const auto& rows = doc.at("prev_placement");
    if (!rows.is_array()) throw ValidationError("prev_placement must be an array of arrays");
    const std::size_t cols = rows.empty() ? 0 : rows.at(0).size();
    Placement xp(rows.size(), cols, 0);
    for (std::size_t n = 0; n < rows.size(); ++n) {
      if (!rows.at(n).is_array() || rows.at(n).size() != cols)
        throw ValidationError("prev_placement rows must be arrays of equal length");
      for (std::size_t s = 0; s < cols; ++s) {
        const auto& v = rows.at(n).at(s);
        if (!v.is_number_integer()) throw ValidationError("prev_placement entries must be 0 or 1");
        const int bit = v.get<int>();
        xp(n, s) = static_cast<std::uint8_t>(bit < 0 ? 2 : std::min(bit, 2));
      }
    }
    inst.previous_placement = std::move(xp);
  }
  if (doc.contains("D") && !doc.at("D").is_null()) inst.adaptation_budget = number(doc, "D");
  return inst;
}

json to_json(const IntegerSolution& sol) {
  json placement = json::array();
  for (std::size_t n = 0; n < sol.placement.rows(); ++n) {
    json row = json::array();
    for (std::size_t s = 0; s < sol.placement.cols(); ++s)
      if (sol.placement(n, s)) row.push_back(s);
    placement.push_back(std::move(row));
  }
  return {{"placement", std::move(placement)}, {"routing", sol.routing}};
}

json to_json(const LoadReport& report) {
  json loads = json::array();
  json factors = json::array();
  for (std::size_t n = 0; n < report.loads.size(); ++n) {
    const auto& l = report.loads[n];
    loads.push_back({{"storage", l[0]}, {"compute", l[1]}, {"uplink", l[2]}, {"downlink", l[3]}});
    json f = json::array();
    for (const auto& v : report.violation_factors[n]) f.push_back(v ? finite_or_null(*v) : json("undefined"));
    factors.push_back(std::move(f));
  }
  json doc = {{"cloud_load", report.cloud_load},
              {"edge_served", report.edge_served},
              {"feasible", report.feasible},
              {"loads", std::move(loads)},
              {"violation_factors", std::move(factors)}};
  if (report.adaptation_spend) doc["adaptation_spend"] = *report.adaptation_spend;
  return doc;
}

json to_json(const BicriteriaReport& report) {
  json storage = json::array();
  for (double f : report.storage) storage.push_back(finite_or_null(f));
  json doc = {{"storage", std::move(storage)},
              {"compute", finite_or_null(report.compute)},
              {"uplink", finite_or_null(report.uplink)},
              {"downlink", finite_or_null(report.downlink)},
              {"objective", finite_or_null(report.objective)}};
  if (report.adaptation) doc["adaptation"] = finite_or_null(*report.adaptation);
  return doc;
}

json to_json(const GeneratorConfig& c) {
  auto range = [](const Range& r) { return json::array({r.lo, r.hi}); };
  return {{"n_stations", c.n_stations},
          {"n_users", c.n_users},
          {"n_services", c.n_services},
          {"area_side", c.area_side},
          {"coverage_radius", c.coverage_radius},
          {"zipf_shape", c.zipf_shape},
          {"storage_cap", c.storage_cap},
          {"compute_cap", c.compute_cap},
          {"uplink_cap", c.uplink_cap},
          {"downlink_cap", c.downlink_cap},
          {"storage_req", range(c.storage_req)},
          {"compute_req", range(c.compute_req)},
          {"uplink_req", range(c.uplink_req)},
          {"downlink_req", range(c.downlink_req)},
          {"seed", c.seed},
          {"max_placement_attempts", c.max_placement_attempts}};
}

GeneratorConfig generator_config_from_json(const json& doc, GeneratorConfig c) {
  if (!doc.is_object()) throw ValidationError("generator config must be a JSON object");
  auto range = [](const json& v, const std::string& key) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ValidationError("field \"" + key + "\" must be a [lo, hi] pair");
    return Range{v[0].get<double>(), v[1].get<double>()};
  };
  for (const auto& [key, v] : doc.items()) {
    if (key == "n_stations") c.n_stations = integer(doc, "n_stations");
    else if (key == "n_users") c.n_users = integer(doc, "n_users");
    else if (key == "n_services") c.n_services = integer(doc, "n_services");
    else if (key == "area_side") c.area_side = number(doc, "area_side");
    else if (key == "coverage_radius") c.coverage_radius = number(doc, "coverage_radius");
    else if (key == "zipf_shape") c.zipf_shape = number(doc, "zipf_shape");
    else if (key == "storage_cap") c.storage_cap = number(doc, "storage_cap");
    else if (key == "compute_cap") c.compute_cap = number(doc, "compute_cap");
    else if (key == "uplink_cap") c.uplink_cap = number(doc, "uplink_cap");
    else if (key == "downlink_cap") c.downlink_cap = number(doc, "downlink_cap");
    else if (key == "storage_req") c.storage_req = range(v, key);
    else if (key == "compute_req") c.compute_req = range(v, key);
    else if (key == "uplink_req") c.uplink_req = range(v, key);
    else if (key == "downlink_req") c.downlink_req = range(v, key);
    else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ValidationError("field \"seed\" must be a nonnegative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "max_placement_attempts") c.max_placement_attempts = integer(doc, "max_placement_attempts");
    else throw ValidationError("unknown generator field \"" + key + "\"");
  }
  return c;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump(to_json(instance));
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace jsprr
