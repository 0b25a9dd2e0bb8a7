#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <memory>
#include <span>
#include <vector>

#include "vizlink/device.hpp"

namespace vizlink {

class Engine;
namespace detail {
struct EngineState;
struct AllocationAccess;
}  // namespace detail

/// Device buffer registered for compute writes and render reads. Handles
/// outlive the memory: after freeAllocation the handle stays valid as an
/// object but every access throws InvalidHandle.
class SharedAllocation {
 public:
  std::uint64_t id() const noexcept { return id_; }
  std::uint64_t ownerId() const noexcept { return owner_id_; }
  std::size_t byteSize() const noexcept { return byte_size_; }
  bool valid() const noexcept;

  /// Device region, usable by compute kernels like any device buffer.
  std::span<std::byte> region() const;

  template <class T>
  std::span<T> as() const {
    auto bytes = region();
    return {reinterpret_cast<T*>(bytes.data()), bytes.size() / sizeof(T)};
  }

  /// Number of live views using this allocation as a property or index source.
  std::size_t viewReferences() const noexcept { return view_refs_.load(); }

  SharedAllocation(std::uint64_t id, std::uint64_t owner_id, std::weak_ptr<detail::EngineState> owner,
                   std::shared_ptr<DeviceBuffer> buffer);

 private:
  friend struct detail::AllocationAccess;

  std::uint64_t id_;
  std::uint64_t owner_id_;
  std::size_t byte_size_;
  std::weak_ptr<detail::EngineState> owner_;
  std::shared_ptr<DeviceBuffer> buffer_;
  std::atomic<std::size_t> view_refs_{0};
};

using AllocHandle = std::shared_ptr<SharedAllocation>;

struct LinearAllocation {
  std::span<std::byte> region;
  AllocHandle handle;

  template <class T>
  T* as() const {
    return reinterpret_cast<T*>(region.data());
  }
};

/// Allocates `byte_size` bytes of shared device memory. Nothing is written to
/// the caller on failure (errors are thrown): InvalidSize, OutOfDeviceMemory.
LinearAllocation allocLinear(Engine& engine, std::size_t byte_size);

/// Host to device upload of `data` at `offset`. Throws OutOfBounds.
void writeFromHost(const AllocHandle& alloc, std::size_t offset, std::span<const std::byte> data);

template <class T>
void writeFromHost(const AllocHandle& alloc, std::span<const T> values, std::size_t offset = 0) {
  writeFromHost(alloc, offset, std::as_bytes(values));
}

/// Device to host copy of `length` bytes at `offset`. Throws OutOfBounds.
std::vector<std::byte> readToHost(const AllocHandle& alloc, std::size_t offset, std::size_t length);

template <class T>
std::vector<T> readToHostAs(const AllocHandle& alloc) {
  const auto bytes = readToHost(alloc, 0, alloc->byteSize() / sizeof(T) * sizeof(T));
  std::vector<T> out(bytes.size() / sizeof(T));
  std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

/// Throws StillReferenced while a live view uses the allocation.
void freeAllocation(Engine& engine, const AllocHandle& alloc);

}  // namespace vizlink
