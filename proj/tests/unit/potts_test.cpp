#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vizlink/error.hpp"
#include "vizlink/samples/potts.hpp"

using namespace vizlink;
using namespace vizlink::samples;

namespace {

/// Assembly by enumerating every cell and its parity.
std::vector<std::int32_t> enumerateGrid(const std::vector<std::int32_t>& white,
                                        const std::vector<std::int32_t>& black, std::size_t L) {
  std::vector<std::int32_t> grid(L * L);
  std::vector<std::size_t> next_white(L, 0), next_black(L, 0);
  for (std::size_t row = 0; row < L; ++row) {
    for (std::size_t col = 0; col < L; ++col) {
      // cells of each colour appear left to right within a row
      if ((row + col) % 2 == 0) {
        grid[row * L + col] = white[row * (L / 2) + next_white[row]++];
      } else {
        grid[row * L + col] = black[row * (L / 2) + next_black[row]++];
      }
    }
  }
  return grid;
}

std::vector<std::int32_t> iota(std::size_t n, std::int32_t start) {
  std::vector<std::int32_t> v(n);
  std::iota(v.begin(), v.end(), start);
  return v;
}

/// Scalar half-sweep over the full lattice, one cell at a time.
void referenceHalfSweep(std::vector<std::int32_t>& grid, std::size_t L, CellSet set,
                        const PottsParams& p, std::uint64_t sweep) {
  const std::vector<std::int32_t> before = grid;
  for (std::size_t r = 0; r < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      const bool white = (r + c) % 2 == 0;
      if (white != (set == CellSet::White)) continue;
      const std::size_t packed = r * (L / 2) + c / 2;
      const auto draws = pottsDraws(p.seed, set, packed, sweep, p.q);
      const std::int32_t s = before[r * L + c];
      const std::int32_t n[4] = {before[((r + L - 1) % L) * L + c], before[((r + 1) % L) * L + c],
                                 before[r * L + (c + L - 1) % L], before[r * L + (c + 1) % L]};
      double same_new = 0, same_old = 0;
      for (auto v : n) {
        same_new += (v == draws.proposal);
        same_old += (v == s);
      }
      const double dE = -double(p.coupling) * (same_new - same_old);
      const double accept = std::min(1.0, std::exp(-dE / p.temperature));
      if (draws.acceptance < accept) grid[r * L + c] = draws.proposal;
    }
  }
}

}  // namespace

TEST(Potts, CheckerboardIndexExamples) {
  EXPECT_EQ(pottsCheckerboardIndex(0, 0, 8), (CheckerboardIndex{CellSet::White, 0}));
  EXPECT_EQ(pottsCheckerboardIndex(0, 1, 8), (CheckerboardIndex{CellSet::Black, 0}));
  EXPECT_EQ(pottsCheckerboardIndex(1, 0, 8), (CheckerboardIndex{CellSet::Black, 4}));
  EXPECT_EQ(pottsCheckerboardIndex(7, 7, 8), (CheckerboardIndex{CellSet::White, 31}));
}

TEST(Potts, CheckerboardIndexIsABijectionPerSet) {
  std::vector<int> white(32, 0), black(32, 0);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      const auto idx = pottsCheckerboardIndex(r, c, 8);
      ASSERT_LT(idx.packed, 32u);
      (idx.set == CellSet::White ? white : black)[idx.packed]++;
      EXPECT_EQ(pottsColumn(idx.set, r, idx.packed % 4), c);
    }
  }
  for (int h : white) EXPECT_EQ(h, 1);
  for (int h : black) EXPECT_EQ(h, 1);
}

TEST(Potts, TwoByTwoAssembly) {
  std::vector<std::int32_t> grid(4);
  pottsWriteGrid(std::vector<std::int32_t>{10, 11}, std::vector<std::int32_t>{20, 21}, grid, 2);
  EXPECT_EQ(grid, (std::vector<std::int32_t>{10, 20, 21, 11}));
}

TEST(Potts, ConstantHalvesGiveACheckerboard) {
  std::vector<std::int32_t> grid(16);
  pottsWriteGrid(std::vector<std::int32_t>(8, 1), std::vector<std::int32_t>(8, 2), grid, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(grid[r * 4 + c], (r + c) % 2 == 0 ? 1 : 2);
}

TEST(Potts, AssemblyMatchesEnumerationAndInverts) {
  const Device device = openDevice();
  for (std::size_t L : {2u, 4u, 8u, 64u}) {
    const auto white = iota(L * L / 2, 0);
    const auto black = iota(L * L / 2, 1'000'000);
    const auto expected = enumerateGrid(white, black, L);
    std::vector<std::int32_t> host(L * L), dev(L * L);
    pottsWriteGrid(white, black, host, L);
    pottsWriteGrid(device, white, black, dev, L);
    EXPECT_EQ(host, expected) << L;
    EXPECT_EQ(dev, expected) << L;

    std::vector<std::int32_t> w(L * L / 2), b(L * L / 2);
    pottsDisassemble(host, w, b, L);
    EXPECT_EQ(w, white);
    EXPECT_EQ(b, black);

    auto sorted_grid = host;
    std::vector<std::int32_t> sorted_halves = white;
    sorted_halves.insert(sorted_halves.end(), black.begin(), black.end());
    std::sort(sorted_grid.begin(), sorted_grid.end());
    std::sort(sorted_halves.begin(), sorted_halves.end());
    EXPECT_EQ(sorted_grid, sorted_halves);
  }
}

TEST(Potts, ParameterValidation) {
  PottsParams p;
  p.L = 7;
  EXPECT_THROW(validatePottsParams(p), Error);
  p = {};
  p.q = 10;
  EXPECT_THROW(validatePottsParams(p), Error);
  p = {};
  p.temperature = 0;
  EXPECT_THROW(validatePottsParams(p), Error);
  p = {};
  p.L = 0;
  EXPECT_THROW(validatePottsParams(p), Error);
}

TEST(Potts, InitialStateShape) {
  PottsParams p;
  p.L = 16;
  p.q = 5;
  const PottsState s = makePottsState(p);
  EXPECT_EQ(s.white.size(), 128u);
  EXPECT_EQ(s.black.size(), 128u);
  for (auto v : s.white) EXPECT_TRUE(v >= 0 && v < 5);
  for (auto v : s.black) EXPECT_TRUE(v >= 0 && v < 5);
  EXPECT_EQ(makePottsState(p).white, s.white);
}

TEST(Potts, HalfSweepMatchesScalarReference) {
  PottsParams p;
  p.L = 4;
  p.q = 3;
  p.temperature = 0.9f;
  p.seed = 77;
  PottsState s = makePottsState(p);
  std::vector<std::int32_t> grid(16);
  pottsWriteGrid(s.white, s.black, grid, 4);
  for (int sweep = 0; sweep < 6; ++sweep) {
    pottsUpdate(s, CellSet::White);
    referenceHalfSweep(grid, 4, CellSet::White, p, s.sweeps - 1);
    pottsUpdate(s, CellSet::Black);
    referenceHalfSweep(grid, 4, CellSet::Black, p, s.sweeps - 1);
    std::vector<std::int32_t> assembled(16);
    pottsWriteGrid(s.white, s.black, assembled, 4);
    ASSERT_EQ(assembled, grid) << "sweep " << sweep;
  }
  EXPECT_EQ(s.sweeps, 12u);
}

TEST(Potts, DeviceSweepMatchesHost) {
  const Device device = openDevice();
  PottsParams p;
  p.L = 64;
  p.seed = 3;
  PottsState a = makePottsState(p);
  PottsState b = a;
  for (int i = 0; i < 5; ++i) {
    for (CellSet set : {CellSet::White, CellSet::Black}) {
      pottsUpdate(a, set);
      pottsUpdate(device, b, set);
    }
  }
  EXPECT_EQ(a.white, b.white);
  EXPECT_EQ(a.black, b.black);
}

TEST(Potts, UniformLatticeAcceptsEqualProposalsWithoutChange) {
  // ground state with q = 2: every rejected or same-state proposal leaves it unchanged,
  // and flipping costs 4J, so at very low temperature nothing moves
  PottsParams p;
  p.L = 8;
  p.q = 2;
  p.temperature = 1e-3f;
  PottsState s = makePottsState(p);
  std::fill(s.white.begin(), s.white.end(), 1);
  std::fill(s.black.begin(), s.black.end(), 1);
  for (int i = 0; i < 10; ++i) {
    pottsUpdate(s, CellSet::White);
    pottsUpdate(s, CellSet::Black);
  }
  EXPECT_TRUE(std::all_of(s.white.begin(), s.white.end(), [](int v) { return v == 1; }));
  EXPECT_TRUE(std::all_of(s.black.begin(), s.black.end(), [](int v) { return v == 1; }));
}

TEST(Potts, InfiniteTemperatureAcceptsEveryProposal) {
  PottsParams p;
  p.L = 8;
  p.q = 9;
  p.temperature = 1e30f;
  PottsState s = makePottsState(p);
  pottsUpdate(s, CellSet::White);
  for (std::size_t k = 0; k < s.white.size(); ++k) {
    EXPECT_EQ(s.white[k], pottsDraws(p.seed, CellSet::White, k, 0, p.q).proposal);
  }
}

TEST(Potts, HighTemperatureHistogramIsUniform) {
  PottsParams p;
  p.L = 16;
  p.q = 4;
  p.temperature = 1e6f;
  p.seed = 12;
  PottsState s = makePottsState(p);
  std::vector<double> counts(p.q, 0);
  for (int sweep = 0; sweep < 200; ++sweep) {
    pottsUpdate(s, CellSet::White);
    pottsUpdate(s, CellSet::Black);
    if (sweep % 10 == 9) {
      for (auto v : s.white) counts[v]++;
      for (auto v : s.black) counts[v]++;
    }
  }
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double chi2 = 0;
  for (double c : counts) chi2 += (c - total / p.q) * (c - total / p.q) / (total / p.q);
  // chi-square critical value, 3 degrees of freedom, 0.01 significance
  EXPECT_LT(chi2, 11.345);
}

TEST(Potts, ColormapIsNormalized) {
  const auto colors = pottsColormap();
  EXPECT_FLOAT_EQ(colors[0].x, 153.0f / 255.0f);
  EXPECT_FLOAT_EQ(colors[1].x, 228.0f / 255.0f);
  EXPECT_FLOAT_EQ(colors[1].y, 26.0f / 255.0f);
  EXPECT_FLOAT_EQ(colors[8].z, 191.0f / 255.0f);
  for (const auto& c : colors) {
    EXPECT_EQ(c.w, 1.0f);
    EXPECT_TRUE(c.x >= 0 && c.x <= 1 && c.y >= 0 && c.y <= 1 && c.z >= 0 && c.z <= 1);
  }
}
