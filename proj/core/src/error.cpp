#include "vizlink/error.hpp"

namespace vizlink {

std::string_view toString(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::NoCapableDevice: return "NoCapableDevice";
    case Errc::SurfaceCreationFailed: return "SurfaceCreationFailed";
    case Errc::OutOfDeviceMemory: return "OutOfDeviceMemory";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::StillReferenced: return "StillReferenced";
    case Errc::InvalidHandle: return "InvalidHandle";
    case Errc::InvalidFormat: return "InvalidFormat";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::MissingPosition: return "MissingPosition";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::BadIndexWidth: return "BadIndexWidth";
    case Errc::ForeignAllocation: return "ForeignAllocation";
    case Errc::InvalidDescription: return "InvalidDescription";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::AlreadyDisplaying: return "AlreadyDisplaying";
    case Errc::NotDisplaying: return "NotDisplaying";
    case Errc::NestedCriticalSection: return "NestedCriticalSection";
    case Errc::NoOpenCriticalSection: return "NoOpenCriticalSection";
    case Errc::InCriticalSection: return "InCriticalSection";
    case Errc::DeviceLost: return "DeviceLost";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyMesh: return "EmptyMesh";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(toString(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace vizlink
