#include "vizlink/samples/potts.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vizlink/error.hpp"
#include "vizlink/rng.hpp"

namespace vizlink::samples {

namespace {

constexpr std::uint64_t kInitStream = 32;
constexpr std::uint64_t kSweepStream = 40;

struct Lattice {
  std::size_t L;
  std::size_t half;

  std::int32_t at(std::span<const std::int32_t> white, std::span<const std::int32_t> black,
                  std::size_t row, std::size_t col) const {
    const std::size_t packed = row * half + col / 2;
    return ((row + col) % 2 == 0) ? white[packed] : black[packed];
  }
};

/// One site of a half-sweep. `own` is updated in place; `other` is only read.
inline void updateSite(const PottsParams& p, const Lattice& lat, CellSet set, std::size_t packed,
                       std::uint64_t sweep, std::span<std::int32_t> own,
                       std::span<const std::int32_t> other) {
  const std::size_t L = lat.L;
  const std::size_t row = packed / lat.half;
  const std::size_t col = pottsColumn(set, row, packed % lat.half);
  const std::size_t up = (row + L - 1) % L, down = (row + 1) % L;
  const std::size_t left = (col + L - 1) % L, right = (col + 1) % L;
  // neighbours of a cell always belong to the other set
  const std::int32_t nbr[4] = {other[up * lat.half + col / 2], other[down * lat.half + col / 2],
                               other[row * lat.half + left / 2], other[row * lat.half + right / 2]};
  const std::int32_t current = own[packed];
  const PottsDraws d = pottsDraws(p.seed, set, packed, sweep, p.q);
  int same_new = 0, same_old = 0;
  for (std::int32_t n : nbr) {
    same_new += n == d.proposal;
    same_old += n == current;
  }
  const float delta_e = -p.coupling * static_cast<float>(same_new - same_old);
  if (d.acceptance < std::exp(-delta_e / p.temperature)) own[packed] = d.proposal;
}

}  // namespace

CheckerboardIndex pottsCheckerboardIndex(std::size_t row, std::size_t col, std::size_t L) {
  return CheckerboardIndex{(row + col) % 2 == 0 ? CellSet::White : CellSet::Black,
                           row * (L / 2) + col / 2};
}

std::size_t pottsColumn(CellSet set, std::size_t row, std::size_t packed_in_row) {
  const std::size_t parity = set == CellSet::White ? row % 2 : 1 - row % 2;
  return 2 * packed_in_row + parity;
}

void pottsWriteGrid(std::span<const std::int32_t> white, std::span<const std::int32_t> black,
                    std::span<std::int32_t> grid, std::size_t L) {
  const Lattice lat{L, L / 2};
  for (std::size_t row = 0; row < L; ++row) {
    for (std::size_t col = 0; col < L; ++col) grid[row * L + col] = lat.at(white, black, row, col);
  }
}

void pottsWriteGrid(const Device& device, std::span<const std::int32_t> white,
                    std::span<const std::int32_t> black, std::span<std::int32_t> grid,
                    std::size_t L) {
  const std::size_t half = L / 2;
  device.dispatchEach(L * half, [&](std::size_t item) {
    const std::size_t row = item / half;
    const std::size_t k = item % half;
    grid[row * L + pottsColumn(CellSet::White, row, k)] = white[item];
    grid[row * L + pottsColumn(CellSet::Black, row, k)] = black[item];
  });
}

void pottsDisassemble(std::span<const std::int32_t> grid, std::span<std::int32_t> white,
                      std::span<std::int32_t> black, std::size_t L) {
  for (std::size_t row = 0; row < L; ++row) {
    for (std::size_t col = 0; col < L; ++col) {
      const auto idx = pottsCheckerboardIndex(row, col, L);
      (idx.set == CellSet::White ? white : black)[idx.packed] = grid[row * L + col];
    }
  }
}

void validatePottsParams(const PottsParams& p) {
  if (p.L < 2 || p.L % 2 != 0) {
    fail(Errc::InvalidConfig, "lattice side must be even and >= 2, got " + std::to_string(p.L));
  }
  if (p.q < 2 || p.q > 9) fail(Errc::InvalidConfig, "q must lie in 2..9");
  if (!(p.temperature > 0)) fail(Errc::InvalidConfig, "temperature must be > 0");
}

PottsState makePottsState(const PottsParams& params) {
  validatePottsParams(params);
  PottsState s;
  s.params = params;
  const std::size_t cells = params.L * params.L / 2;
  s.white.resize(cells);
  s.black.resize(cells);
  const auto q = static_cast<float>(params.q);
  for (std::size_t i = 0; i < cells; ++i) {
    s.white[i] = std::min(params.q - 1, static_cast<int>(rng::uniform(params.seed, kInitStream, i, 0) * q));
    s.black[i] = std::min(params.q - 1, static_cast<int>(rng::uniform(params.seed, kInitStream + 1, i, 0) * q));
  }
  return s;
}

PottsDraws pottsDraws(std::uint64_t seed, CellSet set, std::size_t packed, std::uint64_t sweep,
                      int q) {
  const std::uint64_t stream = kSweepStream + (set == CellSet::White ? 0 : 1);
  const float u = rng::uniform(seed, stream, packed, 2 * sweep);
  const auto proposal = std::min(q - 1, static_cast<int>(u * static_cast<float>(q)));
  return PottsDraws{proposal, rng::uniform(seed, stream, packed, 2 * sweep + 1)};
}

void pottsUpdate(PottsState& state, CellSet set) {
  const Lattice lat{state.params.L, state.params.L / 2};
  std::span<std::int32_t> own = set == CellSet::White ? state.white : state.black;
  std::span<const std::int32_t> other = set == CellSet::White ? state.black : state.white;
  for (std::size_t i = 0; i < own.size(); ++i) {
    updateSite(state.params, lat, set, i, state.sweeps, own, other);
  }
  ++state.sweeps;
}

void pottsUpdate(const Device& device, PottsState& state, CellSet set) {
  const Lattice lat{state.params.L, state.params.L / 2};
  std::span<std::int32_t> own = set == CellSet::White ? state.white : state.black;
  std::span<const std::int32_t> other = set == CellSet::White ? state.black : state.white;
  const std::uint64_t sweep = state.sweeps;
  const PottsParams params = state.params;
  device.dispatchEach(own.size(), [&](std::size_t i) {
    updateSite(params, lat, set, i, sweep, own, other);
  });
  ++state.sweeps;
}

std::array<float4, 9> pottsColormap() {
  constexpr float rgb[9][3] = {{153, 153, 153}, {228, 26, 28},  {55, 126, 184},
                               {77, 175, 74},   {152, 78, 163}, {255, 127, 0},
                               {255, 255, 51},  {166, 86, 40},  {247, 129, 191}};
  std::array<float4, 9> out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = float4{rgb[i][0] / 255.0f, rgb[i][1] / 255.0f, rgb[i][2] / 255.0f, 1.0f};
  }
  return out;
}

}  // namespace vizlink::samples
