#include "stratabound/microdata.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "stratabound/errors.hpp"

namespace stratabound {

bool MicroRecord::y_fully_observed() const {
  return std::all_of(y_observed.begin(), y_observed.end(),
                     [](std::uint8_t f) { return f != 0; });
}

bool MicroRecord::m_fully_observed() const {
  return std::all_of(m_observed.begin(), m_observed.end(),
                     [](std::uint8_t f) { return f != 0; });
}

MicroRecord binary_record(int x, int y, int m) {
  MicroRecord r;
  r.x = x;
  r.y = {static_cast<double>(y)};
  r.y_observed = {1};
  r.m = {static_cast<double>(m)};
  r.m_observed = {1};
  return r;
}

namespace {

int as_binary(double v, const char* what) {
  if (v == 0.0) return 0;
  if (v == 1.0) return 1;
  throw SchemaMismatchError(std::string(what) + " must be 0 or 1");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError("CSV line " + std::to_string(line_no) +
                     ": bad numeric field \"" + field + "\"");
  }
}

}  // namespace

JointTable ingest_microdata(std::span<const MicroRecord> records) {
  std::array<std::array<std::array<long long, 2>, 2>, 2> counts{};
  for (const MicroRecord& r : records) {
    if (r.y.size() != 1 || r.m.size() != 1) {
      throw SchemaMismatchError(
          "binary ingestion expects single-component y and m");
    }
    if (!r.y_fully_observed() || !r.m_fully_observed()) {
      throw MissingComponentError(
          "record with unobserved y or m; use region coarsening for "
          "partially observed data");
    }
    if (r.x != 0 && r.x != 1) throw SchemaMismatchError("x must be 0 or 1");
    int y = as_binary(r.y[0], "y");
    int m = as_binary(r.m[0], "m");
    counts[r.x][m][y] += 1;
  }
  return JointTable(counts);  // throws EmptyArmError for an empty arm
}

std::vector<MicroRecord> read_microdata_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV: empty input");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);

  if (header.empty() || header[0] != "x") {
    throw ParseError("CSV: first column must be x");
  }

  // Column classification. Binary layout is exactly x,y,m; anything else is
  // tuple mode with y*/m* component columns and optional r_y/r_m flags.
  bool binary_mode = header.size() == 3 && header[1] == "y" && header[2] == "m";
  std::vector<std::size_t> y_cols, m_cols;
  std::size_t ry_col = SIZE_MAX, rm_col = SIZE_MAX;
  if (binary_mode) {
    y_cols = {1};
    m_cols = {2};
  } else {
    for (std::size_t i = 1; i < header.size(); ++i) {
      const std::string& h = header[i];
      if (h == "r_y") {
        ry_col = i;
      } else if (h == "r_m") {
        rm_col = i;
      } else if (!h.empty() && h[0] == 'y') {
        y_cols.push_back(i);
      } else if (!h.empty() && h[0] == 'm') {
        m_cols.push_back(i);
      } else {
        throw ParseError("CSV: unrecognized column \"" + h + "\"");
      }
    }
    if (y_cols.empty()) throw ParseError("CSV: no outcome column");
  }

  std::vector<MicroRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError("CSV line " + std::to_string(line_no) +
                       ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    }
    for (auto& f : fields) f = trim(f);

    MicroRecord r;
    if (fields[0].empty()) {
      throw ParseError("CSV line " + std::to_string(line_no) +
                       ": x is always observed and cannot be empty");
    }
    r.x = as_binary(parse_number(fields[0], line_no), "x");

    bool y_flag = ry_col == SIZE_MAX ||
                  parse_number(fields[ry_col], line_no) != 0.0;
    bool m_flag = rm_col == SIZE_MAX ||
                  parse_number(fields[rm_col], line_no) != 0.0;
    for (std::size_t c : y_cols) {
      bool present = y_flag && !fields[c].empty();
      r.y.push_back(present ? parse_number(fields[c], line_no) : 0.0);
      r.y_observed.push_back(present ? 1 : 0);
    }
    for (std::size_t c : m_cols) {
      bool present = m_flag && !fields[c].empty();
      r.m.push_back(present ? parse_number(fields[c], line_no) : 0.0);
      r.m_observed.push_back(present ? 1 : 0);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<MicroRecord> read_two_outcome_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV: empty input");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);
  if (header.size() != 3 || header[0] != "x" || header[1] != "y" ||
      header[2] != "z") {
    throw ParseError("two-outcome CSV requires header x,y,z");
  }
  std::vector<MicroRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw ParseError("CSV line " + std::to_string(line_no) +
                       ": expected 3 fields");
    }
    int x = as_binary(parse_number(trim(fields[0]), line_no), "x");
    int y = as_binary(parse_number(trim(fields[1]), line_no), "y");
    int z = as_binary(parse_number(trim(fields[2]), line_no), "z");
    records.push_back(binary_record(x, y, z));  // z rides in the m slot
  }
  return records;
}

}  // namespace stratabound
