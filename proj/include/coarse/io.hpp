#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "coarse/control_table.hpp"
#include "coarse/map_witness.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

/// Reads a space file: {"points": [...], "matrix": [[...]]} or
/// {"graph": {"vertices": [...], "edges": [[u,v,w], ...]}}. Throws
/// std::invalid_argument on malformed input.
SpacePtr read_space_json(const std::string& path);
SpacePtr parse_space_json(const std::string& text);

/// Writes the explicit points/matrix form.
void write_space_json(const MetricSpace& space, std::ostream& out);
void write_space_json(const MetricSpace& space, const std::string& path);

/// Resolves a space argument: a generator spec "family:size" (e.g.
/// "zplus:64", "grid2_l1:8", "binary_tree:6", "cayley_ball:f2:4") or a path
/// to a space file.
SpacePtr resolve_space(const std::string& arg);

/// Reads a map file {"source": ..., "target": ..., "map": {label: label}};
/// source/target are resolved with resolve_space (relative paths against the
/// map file's directory).
MapWitness read_map_json(const std::string& path);
MapWitness parse_map_json(const std::string& text, const std::string& base_dir);

void write_map_json(const MapWitness& w, const std::string& source_name,
                    const std::string& target_name, std::ostream& out);

/// CSV with header "scale,bound".
void write_control_csv(const ControlTable& table, std::ostream& out);

/// One suite/report row; CSV columns are check,scale,constant,bound,verdict.
struct ReportRow {
  std::string check;
  double scale = 0;
  double constant = 0;
  double bound = 0;
  bool pass = false;
};

void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out);

/// Deterministic short formatting for report values.
std::string format_number(double v);

}  // namespace coarse
