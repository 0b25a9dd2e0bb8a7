#include "vizlink/device.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <new>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "env.hpp"
#include "vizlink/error.hpp"

namespace vizlink {

namespace {

std::size_t physicalMemoryBytes() {
  const long pages = ::sysconf(_SC_PHYS_PAGES);
  const long page_size = ::sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page_size <= 0) return std::size_t{1} << 32;
  return static_cast<std::size_t>(pages) * static_cast<std::size_t>(page_size);
}

std::size_t roundUp(std::size_t value, std::size_t multiple) {
  return (value + multiple - 1) / multiple * multiple;
}

}  // namespace

std::vector<DeviceInfo> enumerateDevices() {
  return {DeviceInfo{
      .name = "software-raster",
      .supports_compute = true,
      .supports_graphics = true,
      .memory_bytes = physicalMemoryBytes(),
  }};
}

std::size_t selectDevice(std::span<const DeviceInfo> devices,
                         std::optional<std::size_t> override_index) {
  auto capable = [](const DeviceInfo& d) { return d.supports_compute && d.supports_graphics; };
  if (override_index) {
    if (*override_index >= devices.size()) {
      fail(Errc::NoCapableDevice, "device index " + std::to_string(*override_index) +
                                      " out of range (" + std::to_string(devices.size()) +
                                      " devices)");
    }
    if (!capable(devices[*override_index])) {
      fail(Errc::NoCapableDevice, "device " + devices[*override_index].name +
                                      " does not support both compute and graphics");
    }
    return *override_index;
  }
  for (std::size_t i = 0; i < devices.size(); ++i) {
    if (capable(devices[i])) return i;
  }
  fail(Errc::NoCapableDevice, "no device supports both compute dispatch and rendering");
}

bool MemoryTracker::tryReserve(MemoryCategory category, std::size_t bytes) {
  std::size_t current = total_.load(std::memory_order_relaxed);
  do {
    if (current + bytes > budget_) return false;
  } while (!total_.compare_exchange_weak(current, current + bytes, std::memory_order_relaxed));
  by_category_[static_cast<std::size_t>(category)].fetch_add(bytes, std::memory_order_relaxed);
  return true;
}

void MemoryTracker::release(MemoryCategory category, std::size_t bytes) noexcept {
  by_category_[static_cast<std::size_t>(category)].fetch_sub(bytes, std::memory_order_relaxed);
  total_.fetch_sub(bytes, std::memory_order_relaxed);
}

std::size_t MemoryTracker::graphicsBytes() const noexcept {
  return bytes(MemoryCategory::Shared) + bytes(MemoryCategory::Framebuffer) +
         bytes(MemoryCategory::ViewResource);
}

DeviceBuffer::DeviceBuffer(std::shared_ptr<MemoryTracker> tracker, std::size_t bytes,
                           MemoryCategory category, BufferUsage usage)
    : tracker_(std::move(tracker)), size_(bytes), category_(category), usage_(usage) {
  reserved_ = roundUp(bytes == 0 ? 1 : bytes, kDeviceAlignment);
  if (!tracker_->tryReserve(category_, reserved_)) {
    fail(Errc::OutOfDeviceMemory, "cannot allocate " + std::to_string(bytes) + " bytes (" +
                                      std::to_string(tracker_->total()) + " of " +
                                      std::to_string(tracker_->budget()) + " in use)");
  }
  data_ = static_cast<std::byte*>(::operator new(reserved_, std::align_val_t{kDeviceAlignment},
                                                 std::nothrow));
  if (data_ == nullptr) {
    tracker_->release(category_, reserved_);
    fail(Errc::OutOfDeviceMemory, "host backing store exhausted for " + std::to_string(bytes) +
                                      " bytes");
  }
}

DeviceBuffer::~DeviceBuffer() {
  ::operator delete(data_, std::align_val_t{kDeviceAlignment});
  tracker_->release(category_, reserved_);
}

Device::Device(DeviceInfo info, std::size_t memory_budget)
    : info_(std::move(info)),
      tracker_(std::make_shared<MemoryTracker>(memory_budget ? memory_budget
                                                             : info_.memory_bytes)) {}

std::shared_ptr<DeviceBuffer> Device::allocate(std::size_t bytes, MemoryCategory category,
                                               BufferUsage usage) {
  return std::make_shared<DeviceBuffer>(tracker_, bytes, category, usage);
}

void Device::dispatch(std::size_t count, const RangeKernel& kernel) const {
  if (count == 0) return;
  constexpr std::size_t kGrain = 4096;
  if (count <= kGrain) {
    kernel(0, count);
  } else {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, count, kGrain),
                      [&](const tbb::blocked_range<std::size_t>& r) { kernel(r.begin(), r.end()); });
  }
  std::atomic_thread_fence(std::memory_order_release);
}

void Device::memoryFence() const noexcept { std::atomic_thread_fence(std::memory_order_seq_cst); }

Device openDevice(std::optional<std::size_t> override_index, std::size_t memory_budget) {
  if (!override_index) override_index = detail::envIndex("VIZ_DEVICE_INDEX");
  auto devices = enumerateDevices();
  const auto index = selectDevice(devices, override_index);
  return Device(devices[index], memory_budget);
}

}  // namespace vizlink
