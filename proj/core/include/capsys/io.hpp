#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "capsys/capacities.hpp"
#include "capsys/geometry.hpp"
#include "capsys/john.hpp"
#include "capsys/loops.hpp"
#include "capsys/solver.hpp"
#include "capsys/zoll.hpp"

namespace capsys {

// Body specification JSON:
//   {"type":"ellipsoid","a":[...]}
//   {"type":"vpolytope","vertices":[[...],...]}
//   {"type":"lagrangian_product","p_vertices":[[...]],"q_vertices":[[...]]}
//   {"type":"scale","lambda":...,"body":{...}}
//   {"type":"translate","offset":[...],"body":{...}}
Body parse_body_json(const std::string& text);
Body load_body(const std::string& path);

// TimeLoop CSV: header t,x1,y1,...,xn,yn, one row per sample.
std::string loop_to_csv(const TimeLoop& loop);
TimeLoop loop_from_csv(const std::string& text);
void save_loop_csv(const TimeLoop& loop, const std::string& path);
TimeLoop load_loop_csv(const std::string& path);

// FourierLoop JSON: {"n":..., "N":..., "coeffs":[{"k":..., "v":[...]},...]},
// coefficient vectors in the split layout (x_1..x_n, y_1..y_n).
std::string fourier_to_json(const FourierLoop& x);
FourierLoop fourier_from_json(const std::string& text);

// Deterministic JSON writer for artifacts: insertion-ordered keys and
// floating-point values rendered with 17 significant digits.
class JsonValue;
using JsonPtr = std::shared_ptr<JsonValue>;

class JsonValue {
 public:
  static JsonPtr object();
  static JsonPtr array();
  static JsonPtr number(double v);
  static JsonPtr integer(long long v);
  static JsonPtr boolean(bool v);
  static JsonPtr string(const std::string& s);

  JsonValue& set(const std::string& key, JsonPtr v);
  JsonValue& push(JsonPtr v);
  std::string dump(int indent = 2) const;

  struct Impl;
  std::shared_ptr<Impl> impl;
};

JsonPtr json_vector(const Vec& v);
JsonPtr json_matrix(const Mat& m);

JsonPtr capacity_sequence_json(const CapacitySequence& seq, const IndexResult& idx);
JsonPtr systole_result_json(const SystoleResult& r, const std::string& loop_csv_path);
JsonPtr john_result_json(const JohnResult& r, double c1_bound);
JsonPtr zoll_report_json(const std::vector<SystoleCluster>& clusters,
                         const std::vector<std::string>& cluster_csv_paths,
                         const CoverageResult& coverage, bool uniqueness);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace capsys
