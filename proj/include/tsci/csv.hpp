#pragma once

#include "tsci/time_series.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tsci {

/// Named, equally long series sharing one time grid.
struct SeriesTable {
  std::vector<std::string> names;
  std::vector<TimeSeries> series;
  double dt = 1.0;
  double t0 = 0.0;

  const TimeSeries& at(const std::string& name) const;
};

inline constexpr double kSamplingTolerance = 1e-6;

/// Parses `time,<name1>,<name2>,...`; rejects non-finite cells and
/// non-uniform time steps (relative tolerance 1e-6).
SeriesTable read_csv(std::istream& in);
SeriesTable read_csv(const std::string& path);

/// Shortest round-trip decimal formatting, LF line endings.
void write_csv(std::ostream& out, const SeriesTable& table);
void write_csv(const std::string& path, const SeriesTable& table);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace tsci
