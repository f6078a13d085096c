#include "latmech/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

namespace latmech::io {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<double> reals(const json& j, const char* key, std::optional<std::size_t> count) {
  const json& v = field(j, key);
  if (!v.is_array()) throw std::invalid_argument(std::string("'") + key + "' must be an array");
  if (count && v.size() != *count)
    throw std::invalid_argument(std::string("'") + key + "' must hold " + std::to_string(*count) + " numbers, got " +
                                std::to_string(v.size()));
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number())
      throw std::invalid_argument(std::string("'") + key + "'[" + std::to_string(k) + "] is not a number");
    const double x = v[k].get<double>();
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string("'") + key + "'[" + std::to_string(k) + "] is not finite");
    out.push_back(x);
  }
  return out;
}

std::optional<double> optional_real(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw std::invalid_argument(std::string("'") + key + "' must be a number");
  return it->get<double>();
}

std::string optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

json parse_object(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
  return j;
}

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

template <class T, class Parse>
std::vector<T> read_records(std::istream& in, const std::string& source, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skip_line(line)) continue;
    try {
      out.push_back(parse(line));
    } catch (const std::exception& ex) {
      throw ParseError(source, number, ex.what());
    }
  }
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& reason)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + reason),
      source_(std::move(source)),
      line_(line),
      reason_(reason) {}

Lattice parse_lattice(std::string_view text) {
  const json j = parse_object(text);
  const std::string name = optional_string(j, "name");

  const auto cell_entries = reals(j, "cell", 9);
  Mat3 cell;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) cell(r, c) = cell_entries[3 * r + c];

  const auto coords = reals(j, "nodes", std::nullopt);
  if (coords.size() % 3 != 0) throw std::invalid_argument("'nodes' length is not a multiple of 3");
  std::vector<Vec3> nodes;
  for (std::size_t n = 0; n < coords.size(); n += 3) nodes.emplace_back(coords[n], coords[n + 1], coords[n + 2]);

  const json& ej = field(j, "edges");
  if (!ej.is_array()) throw std::invalid_argument("'edges' must be an array");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const json& e = ej[k];
    if (!e.is_array() || e.size() != 5)
      throw std::invalid_argument("edge " + std::to_string(k) + " must be [i, j, tx, ty, tz]");
    std::array<int, 5> v{};
    for (std::size_t c = 0; c < 5; ++c) {
      if (!e[c].is_number_integer())
        throw std::invalid_argument("edge " + std::to_string(k) + " has a non-integer entry");
      v[c] = e[c].get<int>();
    }
    edges.push_back({v[0], v[1], Vec3i(v[2], v[3], v[4])});
  }

  const auto radius = optional_real(j, "radius");
  if (!radius) throw std::invalid_argument("missing field 'radius'");
  return Lattice(name, cell, std::move(nodes), std::move(edges), *radius);
}

StiffnessRecord parse_stiffness(std::string_view text) {
  const json j = parse_object(text);
  const std::string basis = optional_string(j, "basis");
  if (!basis.empty() && basis != "mandel")
    throw std::invalid_argument("unsupported basis '" + basis + "' (expected 'mandel')");
  const auto entries = reals(j, "mandel", 36);
  Mat6 m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = entries[6 * r + c];

  StiffnessRecord rec;
  rec.name = optional_string(j, "name");
  rec.radius = optional_real(j, "radius");
  rec.relative_density = optional_real(j, "relative_density");
  rec.mandel = MandelMatrix(m);
  return rec;
}

std::string to_json_line(const Lattice& lat) {
  json j;
  j["name"] = lat.name();
  std::vector<double> cell;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) cell.push_back(lat.cell()(r, c));
  j["cell"] = cell;
  std::vector<double> coords;
  for (const Vec3& x : lat.nodes()) coords.insert(coords.end(), {x.x(), x.y(), x.z()});
  j["nodes"] = coords;
  json edges = json::array();
  for (const Edge& e : lat.edges()) edges.push_back({e.i, e.j, e.shift.x(), e.shift.y(), e.shift.z()});
  j["edges"] = edges;
  j["radius"] = lat.radius();
  return j.dump();
}

std::string to_json_line(const StiffnessRecord& rec) {
  json j;
  if (!rec.name.empty()) j["name"] = rec.name;
  if (rec.radius) j["radius"] = *rec.radius;
  if (rec.relative_density) j["relative_density"] = *rec.relative_density;
  j["basis"] = "mandel";
  const Mat6& m = rec.mandel.matrix();
  std::vector<double> entries;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) entries.push_back(m(r, c));
  j["mandel"] = entries;
  return j.dump();
}

std::vector<Lattice> read_lattices(std::istream& in, const std::string& source) {
  return read_records<Lattice>(in, source, [](const std::string& l) { return parse_lattice(l); });
}

std::vector<StiffnessRecord> read_stiffness(std::istream& in, const std::string& source) {
  return read_records<StiffnessRecord>(in, source, [](const std::string& l) { return parse_stiffness(l); });
}

std::vector<Lattice> read_lattices_file(const std::string& path) {
  auto in = open(path);
  return read_lattices(in, path);
}

std::vector<StiffnessRecord> read_stiffness_file(const std::string& path) {
  auto in = open(path);
  return read_stiffness(in, path);
}

void write_lattices(std::ostream& out, const std::vector<Lattice>& lats) {
  for (const auto& l : lats) out << to_json_line(l) << '\n';
}

void write_stiffness(std::ostream& out, const std::vector<StiffnessRecord>& recs) {
  for (const auto& r : recs) out << to_json_line(r) << '\n';
}

}  // namespace latmech::io
