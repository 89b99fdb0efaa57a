#include "capsys/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace capsys {

namespace {

using nlohmann::json;

Vec vec_from_json(const json& j) {
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

std::vector<Vec> vertex_list(const json& j) {
  std::vector<Vec> out;
  for (const auto& row : j) out.push_back(vec_from_json(row));
  return out;
}

Body body_from(const json& j) {
  if (!j.contains("type")) throw std::invalid_argument("body spec: missing \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "ellipsoid") {
    return make_ellipsoid(j.at("a").get<std::vector<double>>());
  }
  if (type == "vpolytope") {
    return make_vpolytope(vertex_list(j.at("vertices")));
  }
  if (type == "lagrangian_product") {
    return make_lagrangian_product(vertex_list(j.at("p_vertices")),
                                   vertex_list(j.at("q_vertices")));
  }
  if (type == "scale") {
    return scale(body_from(j.at("body")), j.at("lambda").get<double>());
  }
  if (type == "translate") {
    return translate(body_from(j.at("body")), vec_from_json(j.at("offset")));
  }
  throw std::invalid_argument("body spec: unknown type \"" + type + "\"");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Body parse_body_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("body spec: ") + e.what());
  }
  return body_from(j);
}

Body load_body(const std::string& path) { return parse_body_json(read_text_file(path)); }

std::string loop_to_csv(const TimeLoop& loop) {
  const int n = loop.dim / 2;
  std::ostringstream os;
  os << "t";
  for (int p = 1; p <= n; ++p) os << ",x" << p << ",y" << p;
  os << "\n";
  const int M = loop.grid();
  for (int j = 0; j < M; ++j) {
    os << format_double(static_cast<double>(j) / M);
    for (int p = 0; p < n; ++p)
      os << "," << format_double(loop.samples[j](p)) << ","
         << format_double(loop.samples[j](n + p));
    os << "\n";
  }
  return os.str();
}

TimeLoop loop_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("loop csv: empty file");
  int cols = 1;
  for (char c : line)
    if (c == ',') ++cols;
  if (cols < 3 || cols % 2 == 0)
    throw std::invalid_argument("loop csv: header must be t,x1,y1,...,xn,yn");
  const int n = (cols - 1) / 2;
  TimeLoop out;
  out.dim = 2 * n;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) != cols)
      throw std::invalid_argument("loop csv: ragged row");
    Vec v(2 * n);
    for (int p = 0; p < n; ++p) {
      v(p) = vals[1 + 2 * p];
      v(n + p) = vals[2 + 2 * p];
    }
    out.samples.push_back(v);
  }
  if (out.grid() < 2) throw std::invalid_argument("loop csv: need at least 2 samples");
  return out;
}

void save_loop_csv(const TimeLoop& loop, const std::string& path) {
  write_text_file(path, loop_to_csv(loop));
}
TimeLoop load_loop_csv(const std::string& path) {
  return loop_from_csv(read_text_file(path));
}

std::string fourier_to_json(const FourierLoop& x) {
  auto root = JsonValue::object();
  root->set("n", JsonValue::integer(x.dim / 2));
  root->set("N", JsonValue::integer(x.modes));
  auto coeffs = JsonValue::array();
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    auto entry = JsonValue::object();
    entry->set("k", JsonValue::integer(k));
    entry->set("v", json_vector(x.at(k)));
    coeffs->push(entry);
  }
  root->set("coeffs", coeffs);
  return root->dump();
}

FourierLoop fourier_from_json(const std::string& text) {
  json j = json::parse(text);
  const int n = j.at("n").get<int>();
  const int N = j.at("N").get<int>();
  FourierLoop x(2 * n, N);
  for (const auto& e : j.at("coeffs")) {
    const int k = e.at("k").get<int>();
    if (k == 0 || std::abs(k) > N)
      throw std::invalid_argument("fourier json: mode out of range");
    x.at(k) = vec_from_json(e.at("v"));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Deterministic JSON writer.

struct JsonValue::Impl {
  enum class Kind { Object, Array, Number, Integer, Bool, String } kind;
  double num = 0.0;
  long long inum = 0;
  bool b = false;
  std::string str;
  std::vector<std::pair<std::string, JsonPtr>> fields;
  std::vector<JsonPtr> items;
};

namespace {
JsonPtr make_kind(JsonValue::Impl::Kind k) {
  auto v = std::make_shared<JsonValue>();
  v->impl = std::make_shared<JsonValue::Impl>();
  v->impl->kind = k;
  return v;
}

void dump_rec(const JsonValue& v, std::ostringstream& os, int indent, int depth) {
  const auto& im = *v.impl;
  const std::string pad(depth * indent, ' ');
  const std::string padin((depth + 1) * indent, ' ');
  using K = JsonValue::Impl::Kind;
  switch (im.kind) {
    case K::Number: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", im.num);
      os << buf;
      break;
    }
    case K::Integer: os << im.inum; break;
    case K::Bool: os << (im.b ? "true" : "false"); break;
    case K::String: {
      os << '"';
      for (char c : im.str) {
        if (c == '"' || c == '\\') os << '\\';
        os << c;
      }
      os << '"';
      break;
    }
    case K::Object: {
      if (im.fields.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      for (size_t i = 0; i < im.fields.size(); ++i) {
        os << padin << '"' << im.fields[i].first << "\": ";
        dump_rec(*im.fields[i].second, os, indent, depth + 1);
        if (i + 1 < im.fields.size()) os << ',';
        os << '\n';
      }
      os << pad << '}';
      break;
    }
    case K::Array: {
      if (im.items.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (size_t i = 0; i < im.items.size(); ++i) {
        os << padin;
        dump_rec(*im.items[i], os, indent, depth + 1);
        if (i + 1 < im.items.size()) os << ',';
        os << '\n';
      }
      os << pad << ']';
      break;
    }
  }
}
}  // namespace

JsonPtr JsonValue::object() { return make_kind(Impl::Kind::Object); }
JsonPtr JsonValue::array() { return make_kind(Impl::Kind::Array); }
JsonPtr JsonValue::number(double v) {
  auto p = make_kind(Impl::Kind::Number);
  p->impl->num = v;
  return p;
}
JsonPtr JsonValue::integer(long long v) {
  auto p = make_kind(Impl::Kind::Integer);
  p->impl->inum = v;
  return p;
}
JsonPtr JsonValue::boolean(bool v) {
  auto p = make_kind(Impl::Kind::Bool);
  p->impl->b = v;
  return p;
}
JsonPtr JsonValue::string(const std::string& s) {
  auto p = make_kind(Impl::Kind::String);
  p->impl->str = s;
  return p;
}
JsonValue& JsonValue::set(const std::string& key, JsonPtr v) {
  impl->fields.emplace_back(key, std::move(v));
  return *this;
}
JsonValue& JsonValue::push(JsonPtr v) {
  impl->items.push_back(std::move(v));
  return *this;
}
std::string JsonValue::dump(int indent) const {
  std::ostringstream os;
  dump_rec(*this, os, indent, 0);
  os << '\n';
  return os.str();
}

JsonPtr json_vector(const Vec& v) {
  auto a = JsonValue::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a->push(JsonValue::number(v(i)));
  return a;
}

JsonPtr json_matrix(const Mat& m) {
  auto a = JsonValue::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a->push(json_vector(m.row(i)));
  return a;
}

JsonPtr capacity_sequence_json(const CapacitySequence& seq, const IndexResult& idx) {
  auto root = JsonValue::object();
  auto values = JsonValue::array();
  for (double v : seq.values) values->push(JsonValue::number(v));
  auto prov = JsonValue::array();
  for (auto p : seq.provenance)
    prov->push(JsonValue::string(p == Provenance::ClosedForm ? "closed_form" : "numeric"));
  root->set("values", values);
  root->set("provenance", prov);
  root->set("rel_tol", JsonValue::number(seq.rel_tol));
  root->set("index", JsonValue::integer(idx.index));
  root->set("index_is_lower_bound", JsonValue::boolean(idx.is_lower_bound));
  return root;
}

JsonPtr systole_result_json(const SystoleResult& r, const std::string& loop_csv_path) {
  auto root = JsonValue::object();
  root->set("T", JsonValue::number(r.T));
  root->set("beta", json_vector(r.beta));
  root->set("inclusion_residual", JsonValue::number(r.inclusion_residual));
  root->set("boundary_residual", JsonValue::number(r.boundary_residual));
  root->set("loop_csv", JsonValue::string(loop_csv_path));
  root->set("converged", JsonValue::boolean(r.converged));
  auto windows = JsonValue::array();
  for (const auto& w : r.inclusion.windows) {
    auto pair = JsonValue::array();
    pair->push(JsonValue::integer(w.first));
    pair->push(JsonValue::integer(w.second));
    windows->push(pair);
  }
  root->set("corner_windows", windows);
  return root;
}

JsonPtr john_result_json(const JohnResult& r, double c1_bound) {
  auto root = JsonValue::object();
  root->set("center", json_vector(r.ellipsoid.center));
  root->set("shape", json_matrix(r.ellipsoid.shape));
  root->set("gap", JsonValue::number(r.duality_gap));
  auto axes = JsonValue::array();
  if (r.ellipsoid.axes)
    for (double a : *r.ellipsoid.axes) axes->push(JsonValue::number(a));
  root->set("a_normal_form", axes);
  root->set("c1_bound", JsonValue::number(c1_bound));
  return root;
}

JsonPtr zoll_report_json(const std::vector<SystoleCluster>& clusters,
                         const std::vector<std::string>& cluster_csv_paths,
                         const CoverageResult& coverage, bool uniqueness) {
  auto root = JsonValue::object();
  auto arr = JsonValue::array();
  for (size_t i = 0; i < clusters.size(); ++i) {
    auto c = JsonValue::object();
    c->set("action", JsonValue::number(clusters[i].representative.T));
    c->set("members", JsonValue::integer(clusters[i].members));
    c->set("spread", JsonValue::number(clusters[i].spread));
    c->set("loop_csv", JsonValue::string(
                           i < cluster_csv_paths.size() ? cluster_csv_paths[i] : ""));
    arr->push(c);
  }
  root->set("clusters", arr);
  root->set("coverage", JsonValue::number(coverage.fraction));
  root->set("coverage_warning_no_results",
            JsonValue::boolean(coverage.no_converged_results));
  root->set("uniqueness", JsonValue::boolean(uniqueness));
  return root;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace capsys
