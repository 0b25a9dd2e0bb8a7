// Point-cloud benchmark driver: one configuration per invocation, one CSV
// row per run.
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "vizlink/bench/bench.hpp"
#include "vizlink/error.hpp"

int main(int argc, char** argv) {
  using namespace vizlink;
  CLI::App app{"Brownian point-cloud benchmark"};

  bench::BenchConfig config;
  std::string mode = "sync";
  std::string resolution = "fhd";
  std::size_t device = 0;
  std::string out, dump, frame;

  app.add_option("--mode", mode, "base, sync, desync or hostcopy")->capture_default_str();
  app.add_option("--n", config.n, "Number of points")->capture_default_str();
  app.add_option("--iters", config.iterations, "Simulation iterations")->capture_default_str();
  app.add_option("--resolution", resolution, "fhd, qhd, uhd or WxH")->capture_default_str();
  app.add_option("--target-fps", config.target_fps, "Frame limit, 0 for none")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--sigma", config.sigma, "Step deviation, 0 for 0.002 * extent");
  app.add_option("--out", out, "Append the result row to this CSV file");
  auto* headless = app.add_flag("--headless", "Render off-screen");
  auto* device_opt = app.add_option("--device", device, "Device index");
  app.add_option("--dump-shaders", dump, "Write resolved pipeline variants to this directory");
  app.add_option("--frame-out", frame, "Write the final frame as a P6 image");
  app.add_option("--warmup-frames", config.warmup_frames)->capture_default_str();
  app.add_option("--warmup-iters", config.warmup_iterations)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    config.mode = bench::parseMode(mode);
    config.resolution = bench::parseResolution(resolution);
    config.headless = headless->count() > 0;
    if (device_opt->count() > 0) config.device_index = device;
    config.out_path = out;
    config.dump_shaders = dump;
    config.frame_output = frame;

    const bench::BenchRecord record = bench::runBenchmark(config);
    std::printf("%s\n%s\n", std::string(bench::csvHeader()).c_str(),
                bench::formatCsvRow(record).c_str());
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
