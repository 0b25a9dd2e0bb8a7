#include "vizlink/bench/bench.hpp"

namespace vizlink::bench {

MemorySample sampleMemoryUsage(const Engine* engine) {
  const MemoryUsage process = sampleProcessMemory();
  MemorySample sample;
  sample.device_mem_total_bytes = process.device_total_bytes;
  sample.device_total_available = process.device_total_available;
  if (engine != nullptr) sample.graphics_mem_bytes = engine->memoryUsage().graphics_bytes;
  return sample;
}

}  // namespace vizlink::bench
