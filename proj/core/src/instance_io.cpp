/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "seqcflp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace seqcflp {

namespace {

using Json = nlohmann::ordered_json;

const Json& field(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

int integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<int>();
}

const Json& array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  return v;
}

std::vector<double> numbers(const Json& v, const std::string& path) {
  std::vector<double> out;
  const auto& arr = array(v, path);
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(number(arr[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<Point> points(const Json& v, const std::string& path) {
  std::vector<Point> out;
  const auto& arr = array(v, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = path + "[" + std::to_string(k) + "]";
    const auto xy = numbers(arr[k], at);
    if (xy.size() != 2) throw SchemaError(at, "expected [x, y]");
    out.push_back({xy[0], xy[1]});
  }
  return out;
}

Geometry parse_geometry(const Json& g, const std::string& path) {
  Geometry out;
  out.beta = number(field(g, path, "beta"), path + ".beta");
  out.alpha = numbers(field(g, path, "alpha"), path + ".alpha");
  out.customer_xy = points(field(g, path, "customer_xy"), path + ".customer_xy");
  out.site_xy = points(field(g, path, "site_xy"), path + ".site_xy");
  const Json& seed = field(g, path, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw SchemaError(path + ".seed", "expected an unsigned integer");
  }
  out.seed = seed.get<std::uint64_t>();
  if (g.contains("square_side")) {
    out.square_side = number(g["square_side"], path + ".square_side");
  }
  return out;
}

Json points_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(Json::array({p[0], p[1]}));
  return arr;
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", e.what());
  }
  const std::string root = "$";
  const int version = integer(field(doc, root, "version"), "$.version");
  if (version != kInstanceFormatVersion) {
    throw SchemaError("$.version", "unsupported version " + std::to_string(version));
  }
  const int p = integer(field(doc, root, "p"), "$.p");
  const int r = integer(field(doc, root, "r"), "$.r");
  const auto& customers = array(field(doc, root, "customers"), "$.customers");
  if (customers.empty()) throw SchemaError("$.customers", "needs at least one customer");

  std::vector<double> h, uL, uF, w;
  std::size_t sites = 0;
  for (std::size_t i = 0; i < customers.size(); ++i) {
    const std::string at = "$.customers[" + std::to_string(i) + "]";
    const Json& c = customers[i];
    h.push_back(number(field(c, at, "h"), at + ".h"));
    uL.push_back(number(field(c, at, "uL"), at + ".uL"));
    uF.push_back(number(field(c, at, "uF"), at + ".uF"));
    const auto row = numbers(field(c, at, "w"), at + ".w");
    if (i == 0) sites = row.size();
    if (row.size() != sites || sites == 0) {
      throw SchemaError(at + ".w", "expected " + std::to_string(sites) + " entries");
    }
    w.insert(w.end(), row.begin(), row.end());
  }

  std::optional<Instance> inst;
  try {
    inst.emplace(std::move(h), std::move(w), std::move(uL), std::move(uF), p, r);
  } catch (const InstanceError& e) {
    throw SchemaError("$", e.what());
  }

  InstanceFile out{std::move(*inst), std::nullopt};
  if (doc.contains("geometry") && !doc["geometry"].is_null()) {
    Geometry g = parse_geometry(doc["geometry"], "$.geometry");
    if (static_cast<int>(g.customer_xy.size()) != out.instance.num_customers()) {
      throw SchemaError("$.geometry.customer_xy", "one point per customer expected");
    }
    if (static_cast<int>(g.site_xy.size()) != out.instance.num_sites()) {
      throw SchemaError("$.geometry.site_xy", "one point per site expected");
    }
    if (static_cast<int>(g.alpha.size()) != out.instance.num_sites()) {
      throw SchemaError("$.geometry.alpha", "one entry per site expected");
    }
    out.geometry = std::move(g);
  }
  return out;
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("$", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string dump_instance(const Instance& inst, const Geometry* geometry) {
  Json doc;
  doc["version"] = kInstanceFormatVersion;
  doc["p"] = inst.p();
  doc["r"] = inst.r();
  Json customers = Json::array();
  for (int i = 0; i < inst.num_customers(); ++i) {
    Json c;
    c["h"] = inst.h(i);
    c["uL"] = inst.uL(i);
    c["uF"] = inst.uF(i);
    const auto row = inst.w_row(i);
    c["w"] = std::vector<double>(row.begin(), row.end());
    customers.push_back(std::move(c));
  }
  doc["customers"] = std::move(customers);
  if (geometry) {
    Json g;
    g["beta"] = geometry->beta;
    g["alpha"] = geometry->alpha;
    g["customer_xy"] = points_json(geometry->customer_xy);
    g["site_xy"] = points_json(geometry->site_xy);
    g["seed"] = geometry->seed;
    g["square_side"] = geometry->square_side;
    doc["geometry"] = std::move(g);
  }
  return doc.dump(1) + "\n";
}

void write_instance(const std::filesystem::path& path, const Instance& inst,
                    const Geometry* geometry) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump_instance(inst, geometry);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace seqcflp
