#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mdsa/harness.hpp"
#include "mdsa/sim_config.hpp"

namespace mdsa {

inline constexpr const char* kCurveCsvHeader = "algorithm,n,buffer,query_ratio,mean,stddev,trials";
inline constexpr const char* kTableCsvHeader = "algorithm,n,M,data_messages,percent_unused";
inline constexpr const char* kReportCsvHeader =
    "algorithm,n,buffer,policy,data_messages,flood_messages,unicast_messages,init_messages,"
    "messages_sent,messages_received,energy_total,percent_unused,rounds,topology_retries";

// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double v);

// All writers emit LF line endings and a header row, even with no data rows.
void write_curves_csv(std::ostream& out, std::span<const SweepCurve> curves);
void write_table_csv(std::ostream& out, const ComparisonTable& table);
void write_reports_csv(std::ostream& out, std::span<const SimReport> reports);

// Readers check the header and field counts; ParameterError on malformed input.
// Rows sharing (algorithm, n, buffer) form one curve, in file order.
std::vector<SweepCurve> read_curves_csv(std::istream& in);
std::vector<ComparisonRow> read_table_csv(std::istream& in);

// File variants; IoError carries the path.
void save_curves_csv(const std::filesystem::path& path, std::span<const SweepCurve> curves);
void save_table_csv(const std::filesystem::path& path, const ComparisonTable& table);
void save_reports_csv(const std::filesystem::path& path, std::span<const SimReport> reports);

}  // namespace mdsa
