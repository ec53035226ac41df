#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace baire {

enum class TableFormat { tsv, csv };

struct LoadOptions {
  TableFormat format = TableFormat::tsv;
  bool has_header = true;
  bool id_column = true;
  // Pipeline mode: every value must be >= 0 and every row sum > 0, because
  // the downstream log re-encoding needs strictly positive masses.
  bool nonneg = false;
};

// Dense observations x attributes table with unique row identifiers.
struct DataMatrix {
  std::vector<std::string> row_ids;   // n unique identifiers
  std::vector<std::string> col_names; // m names; empty when source had no header
  std::string id_name = "id";        // header of the identifier column
  std::vector<double> values;        // row-major n*m
  std::size_t n = 0;
  std::size_t m = 0;

  double at(std::size_t i, std::size_t j) const { return values[i * m + j]; }
  const double* row(std::size_t i) const { return values.data() + i * m; }
};

DataMatrix load_matrix(const std::string& path, const LoadOptions& options);

// Same as load_matrix but over an in-memory table; `origin` names the source
// in error messages.
DataMatrix parse_matrix(std::string_view text, const LoadOptions& options,
                        const std::string& origin);

std::string serialize_matrix(const DataMatrix& d, TableFormat format);
void save_matrix(const DataMatrix& d, const std::string& path,
                 TableFormat format);

struct Marginals {
  std::vector<double> row_sums;   // x_i = sum_j x_ij
  std::vector<double> col_sums;   // x_j = sum_i x_ij
  double total = 0.0;             // sum_ij x_ij
  std::vector<double> row_masses; // f_I = x_I / total
  std::vector<double> col_masses; // f_J = x_J / total
};

Marginals marginals(const DataMatrix& d);

// Whole-file read with IO errors mapped to the usage exit code.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace baire
