#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vizlink/device.hpp"
#include "vizlink/vector_types.hpp"

// q-state Potts model on an L x L periodic lattice, stored as two packed
// half-lattices updated alternately (checkerboard order).
namespace vizlink::samples {

enum class CellSet { White, Black };

struct CheckerboardIndex {
  CellSet set;
  std::size_t packed;

  friend bool operator==(const CheckerboardIndex&, const CheckerboardIndex&) = default;
};

/// White iff row + col is even; packed = row * (L/2) + col/2.
CheckerboardIndex pottsCheckerboardIndex(std::size_t row, std::size_t col, std::size_t L);

/// Lattice column of packed entry `packed` of `set` (the inverse map).
std::size_t pottsColumn(CellSet set, std::size_t row, std::size_t packed_in_row);

/// Assembles the full row-major lattice from the two packed halves.
void pottsWriteGrid(std::span<const std::int32_t> white, std::span<const std::int32_t> black,
                    std::span<std::int32_t> grid, std::size_t L);
/// Device twin: one work item per (row, packed column) writes both cells.
void pottsWriteGrid(const Device& device, std::span<const std::int32_t> white,
                    std::span<const std::int32_t> black, std::span<std::int32_t> grid,
                    std::size_t L);
/// Inverse of pottsWriteGrid.
void pottsDisassemble(std::span<const std::int32_t> grid, std::span<std::int32_t> white,
                      std::span<std::int32_t> black, std::size_t L);

struct PottsParams {
  std::size_t L = 512;
  int q = 9;
  float temperature = 0.72f;
  float coupling = 1;  // J
  std::uint64_t seed = 0;
};

/// Throws InvalidConfig (L odd or < 2, q outside 2..9, temperature <= 0).
void validatePottsParams(const PottsParams& params);

struct PottsState {
  PottsParams params;
  std::vector<std::int32_t> white;  // L*L/2 spins
  std::vector<std::int32_t> black;  // L*L/2 spins
  std::uint64_t sweeps = 0;         // half-sweeps performed so far
};

/// Spins drawn uniformly from [0, q).
PottsState makePottsState(const PottsParams& params);

/// Metropolis half-sweep of `set`, reading neighbours from the other set.
/// Proposal and acceptance draws are keyed by (seed, set, packed index,
/// sweep), so the result does not depend on evaluation order.
void pottsUpdate(PottsState& state, CellSet set);
void pottsUpdate(const Device& device, PottsState& state, CellSet set);

/// Random draws used by the half-sweep, exposed for reference checks.
struct PottsDraws {
  std::int32_t proposal;
  float acceptance;
};
PottsDraws pottsDraws(std::uint64_t seed, CellSet set, std::size_t packed, std::uint64_t sweep,
                      int q);

/// Nine-entry categorical palette, RGB in [0, 1] and alpha 1.
std::array<float4, 9> pottsColormap();

}  // namespace vizlink::samples
