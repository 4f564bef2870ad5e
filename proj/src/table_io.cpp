#include "eeio/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace eeio {

namespace {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line, std::string_view source,
                                        std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      cells.push_back(was_quoted ? cell : trim(cell));
      cell.clear();
      was_quoted = false;
    } else {
      cell += ch;
    }
  }
  if (quoted) {
    throw ParseError(std::string(source), line_no, cells.size() + 1, "unterminated quote");
  }
  cells.push_back(was_quoted ? cell : trim(cell));
  return cells;
}

std::vector<CsvRow> read_csv(std::istream& in, std::string_view source) {
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    rows.push_back({line_no, split_csv_line(line, source, line_no)});
  }
  return rows;
}

double parse_number(const CsvRow& row, std::size_t col, std::string_view source) {
  const std::string& cell = row.cells[col];
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError(std::string(source), row.line, col + 1,
                     "expected a finite number, got '" + cell + "'");
  }
  return value;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos && s == trim(s)) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

bool is_reserved(const std::string& label) { return label == "D" || label == "T" || label == "V"; }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

Economy parse_table(std::istream& in, const BuildPolicy& policy, std::string_view source) {
  const std::vector<CsvRow> rows = read_csv(in, source);
  if (rows.empty()) throw ParseError(std::string(source), 1, 1, "empty table");
  const CsvRow& header = rows.front();
  const auto& head = header.cells;

  const auto d_pos = std::find(head.begin() + 1, head.end(), std::string("D"));
  if (d_pos == head.end()) {
    throw ParseError(std::string(source), header.line, head.size(), "header has no 'D' column");
  }
  const std::size_t n = static_cast<std::size_t>(d_pos - head.begin()) - 1;
  const std::size_t trailing = static_cast<std::size_t>(head.end() - d_pos) - 1;
  if (n == 0) throw ParseError(std::string(source), header.line, 2, "header lists no sectors");
  if (trailing > 1 || (trailing == 1 && head.back() != "T")) {
    throw ParseError(std::string(source), header.line, n + 3, "only 'T' may follow 'D'");
  }
  const bool has_total_column = trailing == 1;
  const std::size_t width = head.size();

  std::vector<std::string> sectors(head.begin() + 1, d_pos);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (sectors[i].empty() || is_reserved(sectors[i])) {
      throw ParseError(std::string(source), header.line, i + 2,
                       "invalid sector label '" + sectors[i] + "'");
    }
    if (!index.emplace(sectors[i], i).second) {
      throw Error(ErrorCode::DuplicateSector, "duplicate sector label '" + sectors[i] + "'");
    }
  }

  const auto nn = static_cast<Eigen::Index>(n);
  Matrix transactions = Matrix::Zero(nn, nn);
  Vector demand = Vector::Zero(nn);
  Vector column_totals = Vector::Zero(nn);
  std::optional<Vector> value_added;
  std::optional<Vector> row_totals;
  std::vector<bool> seen(n, false);

  for (auto it = rows.begin() + 1; it != rows.end(); ++it) {
    const CsvRow& row = *it;
    const std::string& label = row.cells.front();
    if (label == "V" || label == "T") {
      std::optional<Vector>& target = label == "V" ? value_added : row_totals;
      if (target) {
        throw ParseError(std::string(source), row.line, 1, "repeated '" + label + "' row");
      }
      if (row.cells.size() != n + 1 && row.cells.size() != width) {
        throw ParseError(std::string(source), row.line, row.cells.size(),
                         "row has " + std::to_string(row.cells.size()) + " cells, expected " +
                             std::to_string(width));
      }
      for (std::size_t c = n + 1; c < row.cells.size(); ++c) {
        if (!row.cells[c].empty()) {
          throw ParseError(std::string(source), row.line, c + 1,
                           "'" + label + "' row must leave the D/T cells empty");
        }
      }
      Vector values(nn);
      for (std::size_t j = 0; j < n; ++j) {
        values(static_cast<Eigen::Index>(j)) = parse_number(row, j + 1, source);
      }
      target = std::move(values);
      continue;
    }

    const auto found = index.find(label);
    if (found == index.end()) {
      throw ParseError(std::string(source), row.line, 1, "unknown row label '" + label + "'");
    }
    const std::size_t i = found->second;
    if (seen[i]) throw Error(ErrorCode::DuplicateSector, "sector row '" + label + "' repeated");
    seen[i] = true;
    if (row.cells.size() != width) {
      throw ParseError(std::string(source), row.line, row.cells.size(),
                       "row has " + std::to_string(row.cells.size()) + " cells, expected " +
                           std::to_string(width));
    }
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < n; ++j) {
      transactions(r, static_cast<Eigen::Index>(j)) = parse_number(row, j + 1, source);
    }
    demand(r) = parse_number(row, n + 1, source);
    if (has_total_column) column_totals(r) = parse_number(row, n + 2, source);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::MissingSector, "table has no row for sector '" + sectors[i] + "'");
    }
  }

  std::optional<Vector> totals;
  if (has_total_column) {
    if (row_totals) {
      for (Eigen::Index i = 0; i < nn; ++i) {
        const double a = column_totals(i);
        const double b = (*row_totals)(i);
        if (std::abs(a - b) > policy.tol_rel * std::max(std::abs(a), std::abs(b))) {
          throw Error(ErrorCode::InconsistentTotals,
                      "T column and T row disagree for sector '" +
                          sectors[static_cast<std::size_t>(i)] + "'");
        }
      }
    }
    totals = std::move(column_totals);
  } else if (row_totals) {
    totals = std::move(row_totals);
  }

  BuildPolicy effective = policy;
  if (effective.money_unit.empty()) effective.money_unit = head.front();
  return build_economy(std::move(sectors), std::move(transactions), std::move(demand),
                       std::move(value_added), std::move(totals), effective);
}

Economy parse_table(const std::filesystem::path& path, const BuildPolicy& policy) {
  auto in = open_input(path);
  return parse_table(in, policy, path.string());
}

EmissionAccount parse_emissions(std::istream& in, const Economy& econ, std::string_view source) {
  const std::vector<CsvRow> rows = read_csv(in, source);
  if (rows.empty()) throw ParseError(std::string(source), 1, 1, "empty emission file");
  const CsvRow& header = rows.front();
  if (header.cells.size() != 2) {
    throw ParseError(std::string(source), header.line, header.cells.size(),
                     "header must be: <label>,<emission unit>");
  }

  std::unordered_map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < econ.size(); ++i) index.emplace(econ.sectors[static_cast<std::size_t>(i)], i);

  Vector emissions = Vector::Zero(econ.size());
  std::vector<bool> seen(econ.sectors.size(), false);
  std::vector<std::string> dropped_seen;
  for (auto it = rows.begin() + 1; it != rows.end(); ++it) {
    const CsvRow& row = *it;
    if (row.cells.size() != 2) {
      throw ParseError(std::string(source), row.line, row.cells.size(),
                       "expected two cells: sector,value");
    }
    const std::string& label = row.cells[0];
    const double value = parse_number(row, 1, source);
    if (value < 0.0) throw NegativeEntryError("emissions", row.line, {}, value);

    const auto found = index.find(label);
    if (found == index.end()) {
      const bool dropped = std::find(econ.dropped_sectors.begin(), econ.dropped_sectors.end(),
                                     label) != econ.dropped_sectors.end();
      if (dropped && value == 0.0) continue;
      throw Error(ErrorCode::UnknownSector,
                  dropped ? "emissions assigned to dropped zero-output sector '" + label + "'"
                          : "emission row for unknown sector '" + label + "'");
    }
    const auto i = static_cast<std::size_t>(found->second);
    if (seen[i]) throw Error(ErrorCode::DuplicateSector, "emission row '" + label + "' repeated");
    seen[i] = true;
    emissions(found->second) = value;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::MissingSector, "no emission row for sector '" + econ.sectors[i] + "'");
    }
  }
  return make_emission_account(econ, std::move(emissions), header.cells[1]);
}

EmissionAccount parse_emissions(const std::filesystem::path& path, const Economy& econ) {
  auto in = open_input(path);
  return parse_emissions(in, econ, path.string());
}

void write_table(std::ostream& out, const Economy& econ) {
  const Eigen::Index n = econ.size();
  out << quote_if_needed(econ.money_unit);
  for (const auto& s : econ.sectors) out << ',' << quote_if_needed(s);
  out << ",D,T\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    out << quote_if_needed(econ.sectors[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << format_number(econ.transactions(i, j));
    out << ',' << format_number(econ.demand(i)) << ',' << format_number(econ.totals(i)) << '\n';
  }
  out << 'V';
  for (Eigen::Index j = 0; j < n; ++j) out << ',' << format_number(econ.value_added(j));
  out << ",,\nT";
  for (Eigen::Index j = 0; j < n; ++j) out << ',' << format_number(econ.totals(j));
  out << ",,\n";
}

void write_emissions(std::ostream& out, const Economy& econ, const EmissionAccount& acct) {
  if (acct.emissions.size() != econ.size()) {
    throw Error(ErrorCode::DimensionMismatch, "emission account does not match economy");
  }
  out << "sector," << quote_if_needed(acct.emission_unit) << '\n';
  for (Eigen::Index i = 0; i < econ.size(); ++i) {
    out << quote_if_needed(econ.sectors[static_cast<std::size_t>(i)]) << ','
        << format_number(acct.emissions(i)) << '\n';
  }
}

void write_table(const std::filesystem::path& path, const Economy& econ) {
  auto out = open_output(path);
  write_table(out, econ);
}

void write_emissions(const std::filesystem::path& path, const Economy& econ,
                     const EmissionAccount& acct) {
  auto out = open_output(path);
  write_emissions(out, econ, acct);
}

}  // namespace eeio
