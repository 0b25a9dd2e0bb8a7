#include "vizlink/surface.hpp"

#include <cstdlib>

#include "vizlink/error.hpp"

namespace vizlink {

#ifdef VIZLINK_HAVE_X11
namespace detail {
std::unique_ptr<Surface> createX11Surface(int width, int height);
}
#endif

std::unique_ptr<Surface> createWindowSurface(int width, int height) {
#ifdef VIZLINK_HAVE_X11
  return detail::createX11Surface(width, height);
#else
  (void)width;
  (void)height;
  fail(Errc::SurfaceCreationFailed,
       "built without windowing support; run headless (VIZ_HEADLESS=1 or --headless)");
#endif
}

}  // namespace vizlink
