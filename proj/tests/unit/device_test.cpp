#include <gtest/gtest.h>

#include <cstdlib>
#include <vector>

#include "vizlink/device.hpp"
#include "vizlink/error.hpp"

using namespace vizlink;

TEST(Device, SelectsFirstDeviceWithComputeAndGraphics) {
  const std::vector<DeviceInfo> devices{
      {"compute-only", true, false, 1},
      {"graphics-only", false, true, 1},
      {"both", true, true, 1},
      {"both-too", true, true, 1},
  };
  EXPECT_EQ(selectDevice(devices), 2u);
  EXPECT_EQ(selectDevice(devices, 3), 3u);
}

TEST(Device, RejectsMissingOrIncapableDevices) {
  const std::vector<DeviceInfo> incapable{{"compute-only", true, false, 1}};
  try {
    selectDevice(incapable);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoCapableDevice);
  }
  const std::vector<DeviceInfo> one{{"both", true, true, 1}};
  EXPECT_THROW(selectDevice(one, 1), Error);
  EXPECT_THROW(selectDevice(incapable, 0), Error);
}

TEST(Device, BuiltInDeviceIsCapable) {
  const auto devices = enumerateDevices();
  ASSERT_FALSE(devices.empty());
  EXPECT_NO_THROW(selectDevice(devices));
}

TEST(Device, EnvironmentOverrideIsHonored) {
  ::setenv("VIZ_DEVICE_INDEX", "7", 1);
  EXPECT_THROW(openDevice(), Error);
  ::setenv("VIZ_DEVICE_INDEX", "x", 1);
  EXPECT_THROW(openDevice(), Error);
  ::setenv("VIZ_DEVICE_INDEX", "0", 1);
  EXPECT_NO_THROW(openDevice());
  ::unsetenv("VIZ_DEVICE_INDEX");
}

TEST(Device, DispatchVisitsEveryElementOnce) {
  const Device device = openDevice();
  for (std::size_t n : {0u, 1u, 4095u, 4096u, 100'003u}) {
    std::vector<int> hits(n, 0);
    device.dispatchEach(n, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(Device, BuffersAreAlignedAndAccounted) {
  Device device(enumerateDevices().front(), 1 << 20);
  auto a = device.allocate(100, MemoryCategory::Shared, kSharedUsage);
  auto b = device.allocate(300, MemoryCategory::Plain);
  EXPECT_EQ(reinterpret_cast<std::uintptr_t>(a->data()) % kDeviceAlignment, 0u);
  EXPECT_EQ(a->size(), 100u);
  EXPECT_EQ(a->reservedSize(), 256u);
  EXPECT_EQ(b->reservedSize(), 512u);
  EXPECT_TRUE(hasUsage(a->usage(), BufferUsage::IndexInput));
  EXPECT_EQ(device.memory().graphicsBytes(), 256u);
  EXPECT_EQ(device.memory().total(), 768u);
  a.reset();
  EXPECT_EQ(device.memory().graphicsBytes(), 0u);
}

TEST(Device, BudgetExhaustionIsReported) {
  Device device(enumerateDevices().front(), 1024);
  auto a = device.allocate(1024, MemoryCategory::Plain);
  try {
    device.allocate(1, MemoryCategory::Plain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfDeviceMemory);
  }
  EXPECT_EQ(device.memory().total(), 1024u);
}
