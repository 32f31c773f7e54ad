#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopdyn/analysis.hpp"
#include "coopdyn/simulation.hpp"

// Plot-ready CSV files. Every file may open with '#' metadata lines, followed
// by a mandatory header row. Numbers use the shortest decimal form that reads
// back to the identical double.
namespace coopdyn::csv {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest fixed-point count of any regime: 0, x1, x2, 1.
inline constexpr std::size_t kSweepFixedPointColumns = 4;

std::string format_number(double value);
double parse_number(std::string_view text);

std::string sweep_header();
inline constexpr std::string_view kTrajectoryHeader = "member,t,x";
inline constexpr std::string_view kSummaryHeader = "member,x0,x_final,attractor,slow_decay";
inline constexpr std::string_view kFixedPointHeader = "x,origin,stability";

void write_sweep(std::ostream& os, const std::vector<BifurcationRow>& rows,
                 const std::vector<std::string>& metadata = {});
void write_trajectories(std::ostream& os, const std::vector<Trajectory>& trajectories,
                        const std::vector<std::string>& metadata = {});
void write_summary(std::ostream& os, const std::vector<MemberSummary>& members,
                   const std::vector<std::string>& metadata = {});
void write_fixed_points(std::ostream& os, const std::vector<FixedPoint>& points,
                        const std::vector<std::string>& metadata = {});

struct TrajectoryRow {
  std::size_t member;
  double t;
  double x;
};

struct SummaryRow {
  std::size_t member;
  double x0;
  double x_final;
  std::optional<double> attractor;
  bool slow_decay;
};

// Readers skip metadata lines, check the header and throw
// std::invalid_argument on malformed content.
std::vector<BifurcationRow> read_sweep(std::istream& is);
std::vector<TrajectoryRow> read_trajectories(std::istream& is);
std::vector<SummaryRow> read_summary(std::istream& is);
std::vector<FixedPoint> read_fixed_points(std::istream& is);

// Writes through a temporary sibling file and renames it into place; on any
// failure the partial file is removed and IoError names the path.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer);

}  // namespace coopdyn::csv
