#pragma once

#include <string>
#include <vector>

#include "diracflow/clique_complex.hpp"
#include "diracflow/graded_matrix.hpp"

namespace diracflow {

/// %.17g formatting, the round-trip-exact form used in every CSV.
std::string format_double(double x);
std::string format_complex(Complex z);  // "re+imj" / "re-imj"

/// Row-major CSV, each complex entry as a re,im column pair.
void write_matrix_csv(const std::string& path, const Matrix& m);

/// {"rows":..,"cols":..,"grading":[..],"entries":[[[re,im],..],..]}.
void write_matrix_json(const std::string& path, const GradedMatrix& m);

std::string complex_summary_json(const Graph& g, const SimplicialComplex& c);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace diracflow
