#include "tsci/csv.hpp"

#include "tsci/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tsci {

const TimeSeries& SeriesTable::at(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return series[i];
  }
  throw Error(ErrorCode::InvalidArgument, "no column named '" + name + "'");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.pop_back();
    std::size_t lead = 0;
    while (lead < field.size() && (field[lead] == ' ' || field[lead] == '\t')) ++lead;
    out.push_back(field.substr(lead));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": non-finite value '" + cell + "'");
  }
  return v;
}

}  // namespace

SeriesTable read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::EmptyFile, "no header row");
  const std::vector<std::string> header = split_fields(line);
  if (header.size() < 2 || header.front() != "time") {
    throw Error(ErrorCode::ParseError, "header must be 'time,<name>,...'");
  }
  const std::size_t cols = header.size();
  std::vector<double> times;
  std::vector<std::vector<double>> data(cols - 1);
  while (next_line()) {
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != cols) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(cols) + " fields, got " + std::to_string(fields.size()));
    }
    times.push_back(parse_cell(fields[0], line_no));
    for (std::size_t c = 1; c < cols; ++c) data[c - 1].push_back(parse_cell(fields[c], line_no));
  }
  if (times.empty()) throw Error(ErrorCode::EmptyFile, "no data rows");
  if (times.size() < 2) throw Error(ErrorCode::ParseError, "need at least two rows to infer the sampling interval");

  const double step = times[1] - times[0];
  if (!(step > 0.0)) throw Error(ErrorCode::NonUniformSampling, "time column is not increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double d = times[i] - times[i - 1];
    if (std::abs(d - step) > kSamplingTolerance * step) {
      throw Error(ErrorCode::NonUniformSampling, "time step changes at row " + std::to_string(i));
    }
  }

  SeriesTable table;
  table.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  table.t0 = times.front();
  for (std::size_t c = 1; c < cols; ++c) {
    table.names.push_back(header[c]);
    table.series.emplace_back(std::move(data[c - 1]), table.dt);
  }
  return table;
}

SeriesTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_csv(in);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "cannot format value");
  return {buf, ptr};
}

void write_csv(std::ostream& out, const SeriesTable& table) {
  if (table.names.size() != table.series.size()) {
    throw Error(ErrorCode::InvalidArgument, "column names and series differ in count");
  }
  out << "time";
  for (const auto& n : table.names) out << ',' << n;
  out << '\n';
  const std::size_t rows = table.series.empty() ? 0 : table.series.front().size();
  for (const auto& s : table.series) {
    if (s.size() != rows) throw Error(ErrorCode::AlignmentMismatch, "series differ in length");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_double(table.t0 + static_cast<double>(i) * table.dt);
    for (const auto& s : table.series) out << ',' << format_double(s[i]);
    out << '\n';
  }
}

void write_csv(const std::string& path, const SeriesTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  write_csv(out, table);
}

}  // namespace tsci
