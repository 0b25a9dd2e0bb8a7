#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vizlink {

enum class Errc {
  InvalidConfig,
  NoCapableDevice,
  SurfaceCreationFailed,
  OutOfDeviceMemory,
  InvalidSize,
  OutOfBounds,
  StillReferenced,
  InvalidHandle,
  InvalidFormat,
  UnsupportedFormat,
  MissingPosition,
  SizeMismatch,
  BadIndexWidth,
  ForeignAllocation,
  InvalidDescription,
  InvalidValue,
  AlreadyDisplaying,
  NotDisplaying,
  NestedCriticalSection,
  NoOpenCriticalSection,
  InCriticalSection,
  DeviceLost,
  IoError,
  ParseError,
  EmptyMesh,
};

std::string_view toString(Errc code) noexcept;

/// Every failing library call throws this; `code()` identifies the failure
/// class and `what()` carries the human readable context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace vizlink
