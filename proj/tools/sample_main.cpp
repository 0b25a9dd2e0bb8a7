#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "vizlink/error.hpp"
#include "vizlink/samples/runner.hpp"

namespace {

struct Common {
  bool headless = false;
  std::uint64_t seed = 0;
  double target_fps = 60;
  std::size_t iterations = 0;
  std::string frame_out;
};

void addCommon(CLI::App* cmd, Common& c) {
  cmd->add_flag("--headless", c.headless, "Render off-screen");
  cmd->add_option("--seed", c.seed)->capture_default_str();
  cmd->add_option("--target-fps", c.target_fps, "Frame limit, 0 for none")->capture_default_str();
  cmd->add_option("--iters", c.iterations, "Iterations, 0 runs until the window closes")
      ->capture_default_str();
  cmd->add_option("--frame-out", c.frame_out, "Write the final frame as a P6 image");
}

vizlink::samples::RunOptions runOptions(const Common& c) {
  vizlink::samples::RunOptions o;
  o.headless = c.headless;
  o.target_fps = c.target_fps;
  o.iterations = c.iterations;
  o.frame_output = c.frame_out;
  return o;
}

void summarize(const char* name, const vizlink::samples::SampleReport& r) {
  std::printf("%s: %zu iterations, %llu frames presented, %llu critical sections\n", name,
              r.iterations_completed,
              static_cast<unsigned long long>(r.counters.frames_presented),
              static_cast<unsigned long long>(r.counters.critical_sections_completed));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vizlink::samples;
  CLI::App app{"Simulation samples rendered from shared device memory"};
  app.require_subcommand(1);

  Common potts_common, nbody_common, mesh_common;
  PottsParams potts;
  NBodyParams nbody;
  MeshParams mesh;
  mesh.obj = VIZLINK_DEFAULT_MESH;
  std::string obj_path = mesh.obj.string();

  auto* potts_cmd = app.add_subcommand("potts", "q-state Potts model on a checkerboard lattice");
  potts_cmd->add_option("--l", potts.L, "Lattice side (even)")->capture_default_str();
  potts_cmd->add_option("--q", potts.q, "Number of states (2..9)")->capture_default_str();
  potts_cmd->add_option("--t", potts.temperature, "Temperature")->capture_default_str();
  addCommon(potts_cmd, potts_common);

  auto* nbody_cmd = app.add_subcommand("nbody", "All-pairs gravitational N-body");
  nbody_cmd->add_option("--n", nbody.n, "Number of bodies")->capture_default_str();
  nbody_cmd->add_option("--dt", nbody.dt)->capture_default_str();
  nbody_cmd->add_option("--damping", nbody.damping)->capture_default_str();
  nbody_cmd->add_option("--softening", nbody.softening_squared, "Squared softening length")
      ->capture_default_str();
  addCommon(nbody_cmd, nbody_common);

  auto* mesh_cmd = app.add_subcommand("mesh", "Breathing triangle mesh");
  mesh_cmd->add_option("--obj", obj_path, "Wavefront OBJ file")->capture_default_str();
  mesh_cmd->add_option("--amplitude", mesh.amplitude)->capture_default_str();
  addCommon(mesh_cmd, mesh_common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (potts_cmd->parsed()) {
      potts.seed = potts_common.seed;
      summarize("potts", runPotts(potts, runOptions(potts_common)));
    } else if (nbody_cmd->parsed()) {
      nbody.seed = nbody_common.seed;
      summarize("nbody", runNBody(nbody, runOptions(nbody_common)));
    } else if (mesh_cmd->parsed()) {
      mesh.obj = obj_path;
      summarize("mesh", runMesh(mesh, runOptions(mesh_common)));
    }
  } catch (const vizlink::Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
