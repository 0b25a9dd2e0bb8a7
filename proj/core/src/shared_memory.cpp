#include "vizlink/shared_memory.hpp"

#include <cstring>
#include <string>

#include "engine_state.hpp"
#include "vizlink/error.hpp"

namespace vizlink {

SharedAllocation::SharedAllocation(std::uint64_t id, std::uint64_t owner_id,
                                   std::weak_ptr<detail::EngineState> owner,
                                   std::shared_ptr<DeviceBuffer> buffer)
    : id_(id),
      owner_id_(owner_id),
      byte_size_(buffer ? buffer->size() : 0),
      owner_(std::move(owner)),
      buffer_(std::move(buffer)) {}

bool SharedAllocation::valid() const noexcept { return buffer_ != nullptr; }

std::span<std::byte> SharedAllocation::region() const {
  if (!buffer_) fail(Errc::InvalidHandle, "allocation " + std::to_string(id_) + " was freed");
  return buffer_->bytes();
}

namespace {

void checkRange(const AllocHandle& alloc, std::size_t offset, std::size_t length) {
  if (!alloc) fail(Errc::InvalidHandle, "null allocation handle");
  const std::size_t size = alloc->byteSize();
  if (offset > size || length > size - offset) {
    fail(Errc::OutOfBounds, "range [" + std::to_string(offset) + ", +" + std::to_string(length) +
                                ") exceeds allocation of " + std::to_string(size) + " bytes");
  }
}

}  // namespace

LinearAllocation allocLinear(Engine& engine, std::size_t byte_size) {
  auto& state = engine.state();
  state->checkAlive();
  if (byte_size == 0) fail(Errc::InvalidSize, "allocation size must be > 0");
  auto buffer = state->device.allocate(byte_size, MemoryCategory::Shared, kSharedUsage);

  std::lock_guard lock(state->registry_mutex);
  const std::uint64_t id = state->next_allocation_id++;
  auto handle = std::make_shared<SharedAllocation>(id, state->id, state, std::move(buffer));
  state->allocations.emplace(id, handle);
  ++state->registry.allocations_created;
  return LinearAllocation{handle->region(), handle};
}

void writeFromHost(const AllocHandle& alloc, std::size_t offset, std::span<const std::byte> data) {
  checkRange(alloc, offset, data.size());
  auto region = alloc->region();
  if (!data.empty()) std::memcpy(region.data() + offset, data.data(), data.size());
  std::atomic_thread_fence(std::memory_order_release);
  if (auto owner = detail::AllocationAccess::owner(*alloc)) owner->host_upload_bytes += data.size();
}

std::vector<std::byte> readToHost(const AllocHandle& alloc, std::size_t offset, std::size_t length) {
  checkRange(alloc, offset, length);
  auto region = alloc->region();
  std::atomic_thread_fence(std::memory_order_acquire);
  std::vector<std::byte> out(region.begin() + static_cast<std::ptrdiff_t>(offset),
                             region.begin() + static_cast<std::ptrdiff_t>(offset + length));
  if (auto owner = detail::AllocationAccess::owner(*alloc)) owner->host_readback_bytes += length;
  return out;
}

void freeAllocation(Engine& engine, const AllocHandle& alloc) {
  if (!alloc) fail(Errc::InvalidHandle, "null allocation handle");
  auto& state = engine.state();
  if (alloc->ownerId() != state->id) {
    fail(Errc::ForeignAllocation, "allocation belongs to another instance");
  }
  std::lock_guard lock(state->registry_mutex);
  if (!alloc->valid()) fail(Errc::InvalidHandle, "allocation was already freed");
  if (const auto refs = alloc->viewReferences(); refs > 0) {
    fail(Errc::StillReferenced, "allocation " + std::to_string(alloc->id()) + " is used by " +
                                    std::to_string(refs) + " live view reference(s)");
  }
  detail::AllocationAccess::buffer(*alloc).reset();
  state->allocations.erase(alloc->id());
  ++state->registry.allocations_freed;
}

}  // namespace vizlink
