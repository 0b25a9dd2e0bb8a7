#include <X11/Xlib.h>
#include <X11/Xutil.h>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "vizlink/error.hpp"
#include "vizlink/surface.hpp"

namespace vizlink::detail {

namespace {

/// Plain Xlib window fed through an XImage. Presentation converts the RGBA8
/// frame into the visual's 32-bit BGRX layout.
class X11Surface final : public Surface {
 public:
  X11Surface(int width, int height) : width_(width), height_(height) {
    display_ = XOpenDisplay(nullptr);
    if (display_ == nullptr) {
      const char* name = std::getenv("DISPLAY");
      fail(Errc::SurfaceCreationFailed,
           std::string("cannot open X display '") + (name ? name : "") +
               "'; run headless (VIZ_HEADLESS=1 or --headless)");
    }
    const int screen = DefaultScreen(display_);
    Visual* visual = DefaultVisual(display_, screen);
    const int depth = DefaultDepth(display_, screen);
    if (depth != 24 && depth != 32) {
      XCloseDisplay(display_);
      fail(Errc::SurfaceCreationFailed, "unsupported X visual depth " + std::to_string(depth));
    }
    window_ = XCreateSimpleWindow(display_, RootWindow(display_, screen), 0, 0,
                                  static_cast<unsigned>(width), static_cast<unsigned>(height), 0,
                                  BlackPixel(display_, screen), BlackPixel(display_, screen));
    XStoreName(display_, window_, "vizlink");
    XSelectInput(display_, window_,
                 ButtonPressMask | ButtonReleaseMask | PointerMotionMask | KeyPressMask |
                     StructureNotifyMask);
    wm_delete_ = XInternAtom(display_, "WM_DELETE_WINDOW", False);
    XSetWMProtocols(display_, window_, &wm_delete_, 1);
    XMapWindow(display_, window_);
    gc_ = XCreateGC(display_, window_, 0, nullptr);

    staging_.reset(static_cast<char*>(std::malloc(stagingBytes())));
    image_ = XCreateImage(display_, visual, static_cast<unsigned>(depth), ZPixmap, 0,
                          staging_.get(), static_cast<unsigned>(width),
                          static_cast<unsigned>(height), 32, 0);
    XFlush(display_);
  }

  ~X11Surface() override {
    if (image_) {
      image_->data = nullptr;  // owned by staging_
      XDestroyImage(image_);
    }
    XFreeGC(display_, gc_);
    XDestroyWindow(display_, window_);
    XCloseDisplay(display_);
  }

  void present(const ImageView& frame) override {
    auto* dst = reinterpret_cast<std::uint8_t*>(staging_.get());
    const std::size_t pixels = static_cast<std::size_t>(frame.width) * static_cast<std::size_t>(frame.height);
    for (std::size_t i = 0; i < pixels; ++i) {
      dst[i * 4 + 0] = frame.rgba[i * 4 + 2];
      dst[i * 4 + 1] = frame.rgba[i * 4 + 1];
      dst[i * 4 + 2] = frame.rgba[i * 4 + 0];
      dst[i * 4 + 3] = 255;
    }
    XPutImage(display_, window_, gc_, image_, 0, 0, 0, 0, static_cast<unsigned>(width_),
              static_cast<unsigned>(height_));
    XFlush(display_);
  }

  void pollEvents(std::vector<InputEvent>& events) override {
    while (XPending(display_) > 0) {
      XEvent ev;
      XNextEvent(display_, &ev);
      switch (ev.type) {
        case ClientMessage:
          if (static_cast<Atom>(ev.xclient.data.l[0]) == wm_delete_) events.push_back(CloseEvent{});
          break;
        case ButtonPress:
          if (ev.xbutton.button == Button4) events.push_back(ScrollEvent{1});
          if (ev.xbutton.button == Button5) events.push_back(ScrollEvent{-1});
          if (ev.xbutton.button == Button1) {
            dragging_ = true;
            last_x_ = ev.xbutton.x;
            last_y_ = ev.xbutton.y;
          }
          break;
        case ButtonRelease:
          if (ev.xbutton.button == Button1) dragging_ = false;
          break;
        case MotionNotify:
          if (dragging_) {
            events.push_back(DragEvent{static_cast<float>(ev.xmotion.x - last_x_),
                                       static_cast<float>(ev.xmotion.y - last_y_)});
            last_x_ = ev.xmotion.x;
            last_y_ = ev.xmotion.y;
          }
          break;
        case KeyPress: {
          char text[8] = {};
          KeySym sym;
          if (XLookupString(&ev.xkey, text, sizeof text, &sym, nullptr) > 0) {
            events.push_back(KeyEvent{static_cast<unsigned char>(text[0])});
          }
          break;
        }
        default:
          break;
      }
    }
  }

  std::size_t stagingBytes() const override {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_) * 4;
  }

 private:
  struct FreeDeleter {
    void operator()(char* p) const { std::free(p); }
  };

  int width_;
  int height_;
  Display* display_ = nullptr;
  Window window_ = 0;
  GC gc_ = nullptr;
  Atom wm_delete_ = 0;
  XImage* image_ = nullptr;
  std::unique_ptr<char, FreeDeleter> staging_;
  bool dragging_ = false;
  int last_x_ = 0;
  int last_y_ = 0;
};

}  // namespace

std::unique_ptr<Surface> createX11Surface(int width, int height) {
  return std::make_unique<X11Surface>(width, height);
}

}  // namespace vizlink::detail
