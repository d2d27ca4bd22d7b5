#include "mdsa/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mdsa/error.hpp"

namespace mdsa {

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw ParameterError("cannot format number");
  return std::string(buf, end);
}

void write_curves_csv(std::ostream& out, std::span<const SweepCurve> curves) {
  out << kCurveCsvHeader << '\n';
  for (const SweepCurve& c : curves) {
    for (const SweepPoint& p : c.points) {
      out << to_string(c.algorithm) << ',' << c.n << ',' << c.buffer << ','
          << format_number(p.query_ratio) << ',' << format_number(p.mean) << ','
          << format_number(p.stddev) << ',' << p.trials << '\n';
    }
  }
}

void write_table_csv(std::ostream& out, const ComparisonTable& table) {
  out << kTableCsvHeader << '\n';
  for (const ComparisonRow& r : table.rows) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.buffer << ','
        << format_number(r.data_messages) << ',' << format_number(r.percent_unused) << '\n';
  }
}

void write_reports_csv(std::ostream& out, std::span<const SimReport> reports) {
  out << kReportCsvHeader << '\n';
  for (const SimReport& r : reports) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.buffer_capacity << ','
        << to_string(r.forward_policy) << ',' << r.data_messages << ',' << r.flood_messages << ','
        << r.unicast_messages << ',' << r.init_messages << ',' << r.messages_sent << ','
        << r.messages_received << ',' << format_number(r.energy_total) << ','
        << format_number(r.percent_unused) << ',' << r.rounds_to_quiescence << ','
        << r.topology_retries << '\n';
  }
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream row(line);
  while (std::getline(row, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T field_as(const std::string& text, std::size_t line_no) {
  T out{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParameterError("line " + std::to_string(line_no) + ": bad field '" + text + "'");
  }
  return out;
}

// Calls on_row(fields, line_no) for each data row after checking the header.
template <typename F>
void read_rows(std::istream& in, const char* header, std::size_t width, F on_row) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ParameterError(std::string("expected CSV header '") + header + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_row(line);
    if (fields.size() != width) {
      throw ParameterError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(width) + " fields");
    }
    on_row(fields, line_no);
  }
}

template <typename Writer>
void save_file(const std::filesystem::path& path, Writer write) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace

std::vector<SweepCurve> read_curves_csv(std::istream& in) {
  std::vector<SweepCurve> curves;
  read_rows(in, kCurveCsvHeader, 7, [&](const auto& f, std::size_t line_no) {
    const Algorithm algorithm = parse_algorithm(f[0]);
    const auto n = field_as<std::size_t>(f[1], line_no);
    const auto buffer = field_as<std::size_t>(f[2], line_no);
    if (curves.empty() || curves.back().algorithm != algorithm || curves.back().n != n ||
        curves.back().buffer != buffer) {
      curves.push_back(SweepCurve{algorithm, n, buffer, {}, 0});
    }
    curves.back().points.push_back(SweepPoint{field_as<double>(f[3], line_no),
                                              field_as<double>(f[4], line_no),
                                              field_as<double>(f[5], line_no),
                                              field_as<std::size_t>(f[6], line_no)});
  });
  return curves;
}

std::vector<ComparisonRow> read_table_csv(std::istream& in) {
  std::vector<ComparisonRow> rows;
  read_rows(in, kTableCsvHeader, 5, [&](const auto& f, std::size_t line_no) {
    rows.push_back(ComparisonRow{parse_algorithm(f[0]), field_as<std::size_t>(f[1], line_no),
                                 field_as<std::size_t>(f[2], line_no),
                                 field_as<double>(f[3], line_no),
                                 field_as<double>(f[4], line_no)});
  });
  return rows;
}

void save_curves_csv(const std::filesystem::path& path, std::span<const SweepCurve> curves) {
  save_file(path, [&](std::ostream& out) { write_curves_csv(out, curves); });
}

void save_table_csv(const std::filesystem::path& path, const ComparisonTable& table) {
  save_file(path, [&](std::ostream& out) { write_table_csv(out, table); });
}

void save_reports_csv(const std::filesystem::path& path, std::span<const SimReport> reports) {
  save_file(path, [&](std::ostream& out) { write_reports_csv(out, reports); });
}

}  // namespace mdsa
