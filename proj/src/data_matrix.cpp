#include "baire/data_matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "baire/error.hpp"
#include "baire/format.hpp"

namespace baire {

namespace {

char separator(TableFormat format) {
  return format == TableFormat::tsv ? '\t' : ',';
}

// Splits one line on the separator. Carriage returns from CRLF files are
// stripped from the last field.
void split_fields(std::string_view line, char sep,
                  std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
    out.back().remove_suffix(1);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_usage("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw_usage("failed reading file: " + path);
  return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_usage("cannot open file for writing: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw_usage("failed writing file: " + path);
}

DataMatrix parse_matrix(std::string_view text, const LoadOptions& options,
                        const std::string& origin) {
  const char sep = separator(options.format);
  DataMatrix d;
  std::unordered_set<std::string_view> seen_ids;
  std::vector<std::string_view> fields;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_pending = options.has_header;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty() || line == "\r") continue;

    split_fields(line, sep, fields);

    if (header_pending) {
      header_pending = false;
      std::size_t first_value = options.id_column ? 1 : 0;
      if (options.id_column && !fields.empty())
        d.id_name = std::string(fields[0]);
      for (std::size_t j = first_value; j < fields.size(); ++j)
        d.col_names.emplace_back(fields[j]);
      continue;
    }

    const std::size_t first_value = options.id_column ? 1 : 0;
    if (fields.size() <= first_value)
      throw_usage(origin + ": line " + std::to_string(line_no) +
                  " has no value fields");
    const std::size_t row_m = fields.size() - first_value;
    if (d.m == 0) {
      d.m = row_m;
    } else if (row_m != d.m) {
      throw_usage(origin + ": line " + std::to_string(line_no) + " has " +
                  std::to_string(row_m) + " value fields, expected " +
                  std::to_string(d.m));
    }

    std::string id = options.id_column
                         ? std::string(fields[0])
                         : "row_" + std::to_string(d.n);
    double row_sum = 0.0;
    for (std::size_t j = 0; j < row_m; ++j) {
      std::string_view tok = fields[first_value + j];
      auto value = parse_double(tok);
      if (!value)
        throw_usage(origin + ": line " + std::to_string(line_no) +
                    ", field " + std::to_string(first_value + j + 1) + ": '" +
                    std::string(tok) + "' is not numeric");
      if (options.nonneg && *value < 0.0)
        throw_numeric(origin + ": row '" + id + "' has negative value " +
                      format_double(*value) + " in field " +
                      std::to_string(first_value + j + 1) +
                      " (nonneg mode)");
      d.values.push_back(*value);
      row_sum += *value;
    }
    if (options.nonneg && row_sum == 0.0)
      throw_numeric(origin + ": row '" + id +
                    "' has zero row sum (nonneg mode)");
    d.row_ids.push_back(std::move(id));
    ++d.n;
  }

  if (d.n == 0) throw_usage(origin + ": no data rows");

  if (!d.col_names.empty() && d.col_names.size() != d.m)
    throw_usage(origin + ": header has " + std::to_string(d.col_names.size()) +
                " value columns, rows have " + std::to_string(d.m));

  seen_ids.reserve(d.n * 2);
  for (const auto& id : d.row_ids)
    if (!seen_ids.insert(id).second)
      throw_usage(origin + ": duplicate row id '" + id + "'");

  return d;
}

DataMatrix load_matrix(const std::string& path, const LoadOptions& options) {
  return parse_matrix(read_file(path), options, path);
}

std::string serialize_matrix(const DataMatrix& d, TableFormat format) {
  const char sep = separator(format);
  std::string out;
  out.reserve(d.n * (d.m + 1) * 12);
  if (!d.col_names.empty()) {
    out += d.id_name;
    for (const auto& name : d.col_names) {
      out += sep;
      out += name;
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < d.n; ++i) {
    out += d.row_ids[i];
    for (std::size_t j = 0; j < d.m; ++j) {
      out += sep;
      append_double(out, d.at(i, j));
    }
    out += '\n';
  }
  return out;
}

void save_matrix(const DataMatrix& d, const std::string& path,
                 TableFormat format) {
  write_file(path, serialize_matrix(d, format));
}

Marginals marginals(const DataMatrix& d) {
  Marginals r;
  r.row_sums.resize(d.n);
  r.col_sums.assign(d.m, 0.0);
  // Fixed index order keeps the sums bit-identical across runs and thread
  // counts; per-row work is already cache-friendly.
  for (std::size_t i = 0; i < d.n; ++i) {
    const double* row = d.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < d.m; ++j) {
      s += row[j];
      r.col_sums[j] += row[j];
    }
    r.row_sums[i] = s;
  }
  double total = 0.0;
  for (double s : r.row_sums) total += s;
  r.total = total;
  if (total == 0.0)
    throw_numeric("degenerate matrix: zero grand total, masses undefined");
  r.row_masses.resize(d.n);
  for (std::size_t i = 0; i < d.n; ++i) r.row_masses[i] = r.row_sums[i] / total;
  r.col_masses.resize(d.m);
  for (std::size_t j = 0; j < d.m; ++j) r.col_masses[j] = r.col_sums[j] / total;
  return r;
}

}  // namespace baire
