#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vizlink {

/// Byte alignment of every device buffer.
inline constexpr std::size_t kDeviceAlignment = 256;

struct DeviceInfo {
  std::string name;
  bool supports_compute = false;
  bool supports_graphics = false;
  std::size_t memory_bytes = 0;
};

/// Devices visible to this process. The built-in backend exposes a single
/// device whose compute dispatches run on the host worker pool and whose
/// render passes run on a software rasterizer, both addressing the same
/// buffer memory.
std::vector<DeviceInfo> enumerateDevices();

/// Picks the first device advertising both compute and graphics, or the one
/// at `override_index` when given. Throws NoCapableDevice otherwise.
std::size_t selectDevice(std::span<const DeviceInfo> devices,
                         std::optional<std::size_t> override_index = std::nullopt);

enum class BufferUsage : std::uint32_t {
  ComputeStorage = 1u << 0,
  VertexInput = 1u << 1,
  IndexInput = 1u << 2,
  RenderStorage = 1u << 3,
};

constexpr BufferUsage operator|(BufferUsage a, BufferUsage b) {
  return static_cast<BufferUsage>(static_cast<std::uint32_t>(a) | static_cast<std::uint32_t>(b));
}
constexpr bool hasUsage(BufferUsage set, BufferUsage flag) {
  return (static_cast<std::uint32_t>(set) & static_cast<std::uint32_t>(flag)) != 0;
}
inline constexpr BufferUsage kSharedUsage = BufferUsage::ComputeStorage | BufferUsage::VertexInput |
                                            BufferUsage::IndexInput | BufferUsage::RenderStorage;

/// What a device buffer is used for; drives memory accounting. Everything
/// except Plain is created by the graphics side of the library.
enum class MemoryCategory : std::uint8_t { Shared, Framebuffer, ViewResource, Plain };
inline constexpr std::size_t kMemoryCategoryCount = 4;

class MemoryTracker {
 public:
  explicit MemoryTracker(std::size_t budget_bytes) : budget_(budget_bytes) {}

  bool tryReserve(MemoryCategory category, std::size_t bytes);
  void release(MemoryCategory category, std::size_t bytes) noexcept;

  std::size_t bytes(MemoryCategory category) const noexcept {
    return by_category_[static_cast<std::size_t>(category)].load(std::memory_order_relaxed);
  }
  std::size_t total() const noexcept { return total_.load(std::memory_order_relaxed); }
  /// Bytes held by library-created graphics resources (everything but Plain).
  std::size_t graphicsBytes() const noexcept;
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
  std::atomic<std::size_t> total_{0};
  std::array<std::atomic<std::size_t>, kMemoryCategoryCount> by_category_{};
};

/// Aligned device memory. Released (and un-accounted) on destruction.
class DeviceBuffer {
 public:
  DeviceBuffer(std::shared_ptr<MemoryTracker> tracker, std::size_t bytes, MemoryCategory category,
               BufferUsage usage);
  ~DeviceBuffer();
  DeviceBuffer(const DeviceBuffer&) = delete;
  DeviceBuffer& operator=(const DeviceBuffer&) = delete;

  std::byte* data() noexcept { return data_; }
  const std::byte* data() const noexcept { return data_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t reservedSize() const noexcept { return reserved_; }
  MemoryCategory category() const noexcept { return category_; }
  BufferUsage usage() const noexcept { return usage_; }
  std::span<std::byte> bytes() noexcept { return {data_, size_}; }
  std::span<const std::byte> bytes() const noexcept { return {data_, size_}; }

 private:
  std::shared_ptr<MemoryTracker> tracker_;
  std::byte* data_ = nullptr;
  std::size_t size_ = 0;
  std::size_t reserved_ = 0;
  MemoryCategory category_;
  BufferUsage usage_;
};

/// Range kernel: processes elements [begin, end).
using RangeKernel = std::function<void(std::size_t begin, std::size_t end)>;

class Device {
 public:
  /// `memory_budget` of 0 selects the advertised device memory.
  explicit Device(DeviceInfo info, std::size_t memory_budget = 0);

  const DeviceInfo& info() const noexcept { return info_; }

  /// Throws OutOfDeviceMemory when the budget would be exceeded.
  std::shared_ptr<DeviceBuffer> allocate(std::size_t bytes, MemoryCategory category,
                                         BufferUsage usage = BufferUsage::ComputeStorage);

  /// Runs `kernel` over [0, count) split into chunks across the device's
  /// compute units and waits for completion.
  void dispatch(std::size_t count, const RangeKernel& kernel) const;

  template <class F>
  void dispatchEach(std::size_t count, F&& per_element) const {
    dispatch(count, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) per_element(i);
    });
  }

  /// Orders all previously issued device writes before subsequent reads by
  /// any other context.
  void memoryFence() const noexcept;

  const MemoryTracker& memory() const noexcept { return *tracker_; }

 private:
  DeviceInfo info_;
  std::shared_ptr<MemoryTracker> tracker_;
};

/// Creates the device picked by selectDevice over enumerateDevices, honoring
/// the VIZ_DEVICE_INDEX environment variable when `override_index` is empty.
Device openDevice(std::optional<std::size_t> override_index = std::nullopt,
                  std::size_t memory_budget = 0);

}  // namespace vizlink
