#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vizlink/device.hpp"
#include "vizlink/engine.hpp"
#include "vizlink/vector_types.hpp"

namespace vizlink::bench {

/// Base runs compute only, without an engine. HostCopy computes on the host
/// and uploads the whole buffer inside each critical section.
enum class BenchMode { Base, Sync, Desync, HostCopy };

std::string_view toString(BenchMode mode);
/// Accepts base, sync, desync, hostcopy. Throws InvalidConfig.
BenchMode parseMode(std::string_view text);

struct Resolution {
  int width = 1920;
  int height = 1080;
};

/// fhd, qhd, uhd or an explicit WxH. Throws InvalidConfig.
Resolution parseResolution(std::string_view text);

struct BenchConfig {
  BenchMode mode = BenchMode::Sync;
  std::size_t n = 1'000'000;
  std::size_t iterations = 1000;
  Resolution resolution;
  double target_fps = 0;
  std::uint64_t seed = 0;
  float extent = 1;
  float sigma = 0;  // 0 selects 0.002 * extent
  float point_size = 2;  // pixels
  bool headless = true;
  std::optional<std::size_t> device_index;
  std::filesystem::path out_path;       // CSV appended when set
  std::filesystem::path dump_shaders;   // resolved variants written here when set
  std::filesystem::path frame_output;   // final frame as P6 when set
  std::size_t warmup_frames = 60;
  std::size_t warmup_iterations = 10;

  float effectiveSigma() const { return sigma > 0 ? sigma : 0.002f * extent; }
};

/// Throws InvalidConfig.
void validateBenchConfig(const BenchConfig& config);

struct BenchRecord {
  BenchMode mode = BenchMode::Base;
  std::size_t n = 0;
  int width = 0;
  int height = 0;
  double target_fps = 0;
  double measured_fps = 0;
  double frame_time_p50_ms = 0;
  double frame_time_p99_ms = 0;
  double compute_time_total_s = 0;
  double elapsed_total_s = 0;
  std::size_t graphics_mem_bytes = 0;
  std::size_t device_mem_total_bytes = 0;
  std::size_t iterations_completed = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// Point cloud workload ------------------------------------------------------

/// n positions uniform in [0, extent]^3, a pure function of (seed, n, extent).
std::vector<float3> initRandomPositions(std::uint64_t seed, std::size_t n, float extent);
/// Same values, generated by a device dispatch into `out`.
void initRandomPositions(const Device& device, std::span<float3> out, std::uint64_t seed,
                         float extent);

/// Host reference of one Brownian step: every coordinate moves by
/// sigma * N(0, 1) drawn from (seed, point, axis, iteration). sigma <= 0 is
/// the identity.
void brownianStep(std::span<float3> positions, float sigma, std::uint64_t iteration,
                  std::uint64_t seed);
/// Device twin of brownianStep.
void brownianStep(const Device& device, std::span<float3> positions, float sigma,
                  std::uint64_t iteration, std::uint64_t seed);

// Measurement ----------------------------------------------------------------

struct MemorySample {
  std::size_t graphics_mem_bytes = 0;
  std::size_t device_mem_total_bytes = 0;
  bool device_total_available = false;
};

/// Graphics memory of `engine` (0 without one) plus process-wide device memory.
MemorySample sampleMemoryUsage(const Engine* engine);

/// Nearest-rank percentile, p in [0, 100]. Empty input yields 0.
double percentile(std::vector<double> values, double p);

/// Runs one configuration and, when out_path is set, appends its row.
BenchRecord runBenchmark(const BenchConfig& config);

// CSV ------------------------------------------------------------------------

std::string_view csvHeader();
std::string formatCsvRow(const BenchRecord& record);
/// Appends rows, writing the header only when the file is new or empty.
/// Throws IoError.
void writeCsv(std::span<const BenchRecord> records, const std::filesystem::path& path);
/// Throws IoError or ParseError.
std::vector<BenchRecord> readCsv(const std::filesystem::path& path);

}  // namespace vizlink::bench
