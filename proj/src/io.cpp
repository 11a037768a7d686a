#include "diracflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace diracflow {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  out += (z.imag() < 0.0 ? "-" : "+");
  out += format_double(std::abs(z.imag()));
  out += "j";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ",";
      out += format_double(m(r, c).real());
      out += ",";
      out += format_double(m(r, c).imag());
    }
    out += "\n";
  }
  write_text_file(path, out);
}

void write_matrix_json(const std::string& path, const GradedMatrix& m) {
  nlohmann::ordered_json j;
  j["rows"] = m.matrix().rows();
  j["cols"] = m.matrix().cols();
  j["grading"] = m.grading().f_vector();
  auto entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.matrix().rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.matrix().cols(); ++c)
      row.push_back({m.matrix()(r, c).real(), m.matrix()(r, c).imag()});
    entries.push_back(row);
  }
  j["entries"] = entries;
  write_text_file(path, j.dump() + "\n");
}

std::string complex_summary_json(const Graph& g, const SimplicialComplex& c) {
  nlohmann::ordered_json j;
  j["n"] = g.vertex_count;
  j["edge_count"] = g.edge_count();
  j["f_vector"] = c.f_vector();
  j["total_dim"] = c.total_dim();
  j["euler_characteristic"] = euler_characteristic(c);
  j["clique_polynomial"] = clique_polynomial(c);
  return j.dump(2) + "\n";
}

}  // namespace diracflow
