#include "coopdyn/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace coopdyn::csv {

namespace {

void write_metadata(std::ostream& os, const std::vector<std::string>& metadata) {
  for (const auto& line : metadata) os << "# " << line << '\n';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

// Data rows after the metadata block and a header equal to `header`.
std::vector<std::string> data_lines(std::istream& is, std::string_view header) {
  std::vector<std::string> lines;
  std::string line;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!seen_header) {
      if (line.empty() || line.front() == '#') continue;
      if (line != header) throw std::invalid_argument("unexpected CSV header: " + line);
      seen_header = true;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  if (!seen_header) throw std::invalid_argument("CSV header row missing");
  return lines;
}

std::size_t parse_index(std::string_view text) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("malformed index: " + std::string(text));
  }
  return value;
}

void expect_cells(const std::vector<std::string_view>& cells, std::size_t n) {
  if (cells.size() != n) throw std::invalid_argument("wrong number of CSV cells");
}

FixedPointOrigin origin_of(double x) {
  return (x == 0.0 || x == 1.0) ? FixedPointOrigin::Boundary : FixedPointOrigin::Internal;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buffer, end);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("malformed number: " + std::string(text));
  }
  return value;
}

std::string sweep_header() {
  std::string header = "param,regime";
  for (std::size_t i = 1; i <= kSweepFixedPointColumns; ++i) {
    header += ",fp" + std::to_string(i) + "_x,fp" + std::to_string(i) + "_stab";
  }
  return header;
}

void write_sweep(std::ostream& os, const std::vector<BifurcationRow>& rows,
                 const std::vector<std::string>& metadata) {
  write_metadata(os, metadata);
  os << sweep_header() << '\n';
  for (const auto& row : rows) {
    os << format_number(row.parameter) << ',' << (row.regime ? to_string(*row.regime) : "error");
    for (std::size_t i = 0; i < kSweepFixedPointColumns; ++i) {
      if (i < row.fixed_points.size()) {
        os << ',' << format_number(row.fixed_points[i].location) << ','
           << to_string(row.fixed_points[i].stability);
      } else {
        os << ",,";
      }
    }
    os << '\n';
  }
}

void write_trajectories(std::ostream& os, const std::vector<Trajectory>& trajectories,
                        const std::vector<std::string>& metadata) {
  write_metadata(os, metadata);
  os << kTrajectoryHeader << '\n';
  for (std::size_t m = 0; m < trajectories.size(); ++m) {
    for (const Sample& s : trajectories[m].samples) {
      os << m << ',' << format_number(s.t) << ',' << format_number(s.x) << '\n';
    }
  }
}

void write_summary(std::ostream& os, const std::vector<MemberSummary>& members,
                   const std::vector<std::string>& metadata) {
  write_metadata(os, metadata);
  os << kSummaryHeader << '\n';
  for (std::size_t m = 0; m < members.size(); ++m) {
    const auto& s = members[m];
    os << m << ',' << format_number(s.x0) << ',' << format_number(s.x_final) << ','
       << (s.attractor ? format_number(*s.attractor) : "") << ','
       << (s.slow_decay ? "true" : "false") << '\n';
  }
}

void write_fixed_points(std::ostream& os, const std::vector<FixedPoint>& points,
                        const std::vector<std::string>& metadata) {
  write_metadata(os, metadata);
  os << kFixedPointHeader << '\n';
  for (const auto& fp : points) {
    os << format_number(fp.location) << ',' << to_string(fp.origin) << ','
       << to_string(fp.stability) << '\n';
  }
}

std::vector<BifurcationRow> read_sweep(std::istream& is) {
  std::vector<BifurcationRow> rows;
  for (const auto& line : data_lines(is, sweep_header())) {
    const auto cells = split(line);
    expect_cells(cells, 2 + 2 * kSweepFixedPointColumns);
    BifurcationRow row{parse_number(cells[0]), std::nullopt, {}, {}};
    if (cells[1] != "error") row.regime = parse_regime(cells[1]);
    for (std::size_t i = 0; i < kSweepFixedPointColumns; ++i) {
      const auto x = cells[2 + 2 * i];
      if (x.empty()) break;
      const double location = parse_number(x);
      row.fixed_points.push_back(
          {location, origin_of(location), parse_stability(cells[3 + 2 * i])});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TrajectoryRow> read_trajectories(std::istream& is) {
  std::vector<TrajectoryRow> rows;
  for (const auto& line : data_lines(is, kTrajectoryHeader)) {
    const auto cells = split(line);
    expect_cells(cells, 3);
    rows.push_back({parse_index(cells[0]), parse_number(cells[1]), parse_number(cells[2])});
  }
  return rows;
}

std::vector<SummaryRow> read_summary(std::istream& is) {
  std::vector<SummaryRow> rows;
  for (const auto& line : data_lines(is, kSummaryHeader)) {
    const auto cells = split(line);
    expect_cells(cells, 5);
    SummaryRow row{parse_index(cells[0]), parse_number(cells[1]), parse_number(cells[2]),
                   std::nullopt, false};
    if (!cells[3].empty()) row.attractor = parse_number(cells[3]);
    if (cells[4] == "true") {
      row.slow_decay = true;
    } else if (cells[4] != "false") {
      throw std::invalid_argument("malformed flag: " + std::string(cells[4]));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<FixedPoint> read_fixed_points(std::istream& is) {
  std::vector<FixedPoint> points;
  for (const auto& line : data_lines(is, kFixedPointHeader)) {
    const auto cells = split(line);
    expect_cells(cells, 3);
    FixedPoint fp{parse_number(cells[0]), FixedPointOrigin::Internal,
                  parse_stability(cells[2])};
    if (cells[1] == "Boundary") {
      fp.origin = FixedPointOrigin::Boundary;
    } else if (cells[1] != "Internal") {
      throw std::invalid_argument("malformed origin: " + std::string(cells[1]));
    }
    points.push_back(fp);
  }
  return points;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  fs::path partial = path;
  partial += ".partial";
  auto fail = [&](const std::string& what) {
    std::error_code ignored;
    fs::remove(partial, ignored);
    throw IoError(path.string() + ": " + what);
  };

  {
    std::ofstream os(partial, std::ios::binary | std::ios::trunc);
    if (!os) fail("cannot open for writing");
    try {
      writer(os);
    } catch (const std::exception& e) {
      os.close();
      fail(e.what());
    }
    os.flush();
    if (!os) fail("write failed");
  }
  std::error_code ec;
  fs::rename(partial, path, ec);
  if (ec) fail(ec.message());
}

}  // namespace coopdyn::csv
