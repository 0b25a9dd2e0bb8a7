#include <charconv>
#include <fstream>
#include <system_error>

#include "vizlink/bench/bench.hpp"
#include "vizlink/error.hpp"

namespace vizlink::bench {

namespace {

constexpr std::size_t kColumns = 13;

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template <class T>
std::string number(T value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

/// Splits one record; quoted fields may contain separators and doubled quotes.
std::vector<std::string> splitRecord(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": unterminated quote");
  return fields;
}

template <class T>
T parseNumber(const std::string& text, std::size_t line_no, std::string_view column) {
  T value{};
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad " + std::string(column) +
                               " '" + text + "'");
  }
  return value;
}

}  // namespace

std::string_view csvHeader() {
  return "mode,n,width,height,target_fps,measured_fps,frame_time_p50_ms,frame_time_p99_ms,"
         "compute_time_total_s,elapsed_total_s,graphics_mem_bytes,device_mem_total_bytes,"
         "iterations_completed";
}

std::string formatCsvRow(const BenchRecord& r) {
  std::string out = quote(toString(r.mode));
  for (const std::string& field :
       {number(r.n), number(r.width), number(r.height), number(r.target_fps),
        number(r.measured_fps), number(r.frame_time_p50_ms), number(r.frame_time_p99_ms),
        number(r.compute_time_total_s), number(r.elapsed_total_s), number(r.graphics_mem_bytes),
        number(r.device_mem_total_bytes), number(r.iterations_completed)}) {
    out += ',';
    out += field;
  }
  return out;
}

void writeCsv(std::span<const BenchRecord> records, const std::filesystem::path& path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path.string() + " for appending");
  if (fresh) out << csvHeader() << '\n';
  for (const auto& r : records) out << formatCsvRow(r) << '\n';
  out.flush();
  if (!out) fail(Errc::IoError, "write to " + path.string() + " failed");
}

std::vector<BenchRecord> readCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  std::vector<BenchRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == csvHeader()) continue;
    const auto f = splitRecord(line, line_no);
    if (f.size() != kColumns) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(kColumns) + " fields, got " +
                                 std::to_string(f.size()));
    }
    BenchRecord r;
    try {
      r.mode = parseMode(f[0]);
    } catch (const Error&) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown mode '" + f[0] + "'");
    }
    r.n = parseNumber<std::size_t>(f[1], line_no, "n");
    r.width = parseNumber<int>(f[2], line_no, "width");
    r.height = parseNumber<int>(f[3], line_no, "height");
    r.target_fps = parseNumber<double>(f[4], line_no, "target_fps");
    r.measured_fps = parseNumber<double>(f[5], line_no, "measured_fps");
    r.frame_time_p50_ms = parseNumber<double>(f[6], line_no, "frame_time_p50_ms");
    r.frame_time_p99_ms = parseNumber<double>(f[7], line_no, "frame_time_p99_ms");
    r.compute_time_total_s = parseNumber<double>(f[8], line_no, "compute_time_total_s");
    r.elapsed_total_s = parseNumber<double>(f[9], line_no, "elapsed_total_s");
    r.graphics_mem_bytes = parseNumber<std::size_t>(f[10], line_no, "graphics_mem_bytes");
    r.device_mem_total_bytes = parseNumber<std::size_t>(f[11], line_no, "device_mem_total_bytes");
    r.iterations_completed = parseNumber<std::size_t>(f[12], line_no, "iterations_completed");
    records.push_back(r);
  }
  return records;
}

}  // namespace vizlink::bench
