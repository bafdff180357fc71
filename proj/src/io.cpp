#include "coarse/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "coarse/common.hpp"
#include "coarse/generators.hpp"

namespace coarse {

namespace {

using json = nlohmann::ordered_json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

SpacePtr space_from_json(const json& j) {
  if (j.contains("points") && j.contains("matrix")) {
    std::vector<std::string> labels = j.at("points").get<std::vector<std::string>>();
    const auto& rows = j.at("matrix");
    if (!rows.is_array()) throw std::invalid_argument("matrix must be an array of rows");
    std::vector<std::vector<double>> matrix;
    for (const auto& row : rows) matrix.push_back(row.get<std::vector<double>>());
    return std::make_shared<const MetricSpace>(
        MetricSpace::from_rows(std::move(labels), matrix));
  }
  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    WeightedGraph graph;
    graph.vertices = g.at("vertices").get<std::vector<std::string>>();
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) index[graph.vertices[i]] = i;
    for (const auto& e : g.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw std::invalid_argument("graph edge must be [u, v, w]");
      }
      const std::string u = e[0].get<std::string>();
      const std::string v = e[1].get<std::string>();
      if (!index.count(u) || !index.count(v)) {
        throw std::invalid_argument("graph edge references unknown vertex");
      }
      graph.add_edge(index[u], index[v], e[2].get<double>());
    }
    return std::make_shared<const MetricSpace>(shortest_path_metric(graph));
  }
  throw std::invalid_argument("space file needs either points/matrix or graph");
}

}  // namespace

SpacePtr read_space_json(const std::string& path) { return space_from_json(load_json_file(path)); }

SpacePtr parse_space_json(const std::string& text) {
  return space_from_json(json::parse(text));
}

void write_space_json(const MetricSpace& space, std::ostream& out) {
  json j;
  j["points"] = space.labels();
  json matrix = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
    matrix.push_back(std::move(row));
  }
  j["matrix"] = std::move(matrix);
  out << j.dump(1) << "\n";
}

void write_space_json(const MetricSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  write_space_json(space, out);
}

SpacePtr resolve_space(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos && !std::filesystem::exists(arg)) {
    const std::string family = arg.substr(0, colon);
    std::string rest = arg.substr(colon + 1);
    std::string variant;
    const auto colon2 = rest.find(':');
    if (colon2 != std::string::npos) {
      variant = rest.substr(0, colon2);
      rest = rest.substr(colon2 + 1);
    }
    try {
      const int size = std::stoi(rest);
      return make_model_space(family, size, variant);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (...) {
      throw std::invalid_argument("bad generator size in '" + arg + "'");
    }
  }
  return read_space_json(arg);
}

MapWitness parse_map_json(const std::string& text, const std::string& base_dir) {
  const json j = json::parse(text);
  auto resolve = [&](const std::string& name) -> SpacePtr {
    if (name.find(':') != std::string::npos && !std::filesystem::exists(name)) {
      return resolve_space(name);
    }
    std::filesystem::path p(name);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return read_space_json(p.string());
  };
  const SpacePtr source = resolve(j.at("source").get<std::string>());
  const SpacePtr target = resolve(j.at("target").get<std::string>());
  MapWitness w{source, target, std::vector<std::size_t>(source->size(), 0)};
  std::vector<bool> seen(source->size(), false);
  for (const auto& [from, to] : j.at("map").items()) {
    const std::size_t s = source->index_of(from);
    w.map[s] = target->index_of(to.get<std::string>());
    seen[s] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw std::invalid_argument("map file does not cover source point " + source->label(i));
    }
  }
  return w;
}

MapWitness read_map_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_map_json(buffer.str(), std::filesystem::path(path).parent_path().string());
}

void write_map_json(const MapWitness& w, const std::string& source_name,
                    const std::string& target_name, std::ostream& out) {
  json j;
  j["source"] = source_name;
  j["target"] = target_name;
  json m = json::object();
  for (std::size_t i = 0; i < w.map.size(); ++i) {
    m[w.source->label(i)] = w.target->label(w.map[i]);
  }
  j["map"] = std::move(m);
  out << j.dump(1) << "\n";
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::floor(v) == v && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

void write_control_csv(const ControlTable& table, std::ostream& out) {
  out << "scale,bound\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << format_number(table.scale(i)) << "," << format_number(table.bound(i)) << "\n";
  }
}

void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "check,scale,constant,bound,verdict\n";
  for (const auto& row : rows) {
    out << row.check << "," << format_number(row.scale) << "," << format_number(row.constant)
        << "," << format_number(row.bound) << "," << (row.pass ? "pass" : "fail") << "\n";
  }
}

}  // namespace coarse
