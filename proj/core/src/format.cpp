#include "vizlink/format.hpp"

#include "vizlink/error.hpp"

namespace vizlink {

FormatDescription makeFormat(ComponentKind kind, int bit_width, int components) {
  const bool width_ok = bit_width == 8 || bit_width == 16 || bit_width == 32 || bit_width == 64;
  if (!width_ok) fail(Errc::InvalidFormat, "bit width must be 8, 16, 32 or 64");
  if (kind == ComponentKind::Float && bit_width == 8) {
    fail(Errc::InvalidFormat, "no 8-bit float format");
  }
  if (components < 1 || components > 4) fail(Errc::InvalidFormat, "components must be in 1..4");
  return FormatDescription{kind, static_cast<std::uint8_t>(bit_width),
                           static_cast<std::uint8_t>(components)};
}

std::string toString(const FormatDescription& format) {
  std::string name;
  switch (format.kind) {
    case ComponentKind::SignedInt: name = "int"; break;
    case ComponentKind::UnsignedInt: name = "uint"; break;
    case ComponentKind::Float: name = "float"; break;
  }
  name += std::to_string(format.bit_width);
  if (format.components > 1) name += "x" + std::to_string(format.components);
  return name;
}

}  // namespace vizlink
