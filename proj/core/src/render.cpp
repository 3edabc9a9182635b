#include "shapebench/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <numbers>
#include <system_error>

namespace shapebench {

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("image dimensions must be non-negative");
  }
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Rgb color_value(ColorName color) {
  switch (color) {
    case ColorName::Orange: return {255, 165, 0};
    case ColorName::Red: return {255, 0, 0};
    case ColorName::Blue: return {0, 0, 255};
    case ColorName::Green: return {0, 128, 0};
    case ColorName::Yellow: return {255, 255, 0};
    case ColorName::Magenta: return {255, 0, 255};
  }
  return {0, 0, 0};
}

bool shape_contains(const ShapeInstance& shape, double x, double y) {
  // Into the local y-up frame, undoing the counter-clockwise rotation.
  const double dx = x - shape.center.x;
  const double dy = shape.center.y - y;
  const double theta = shape.rotation_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const double lx = dx * c + dy * s;
  const double ly = -dx * s + dy * c;
  constexpr double eps = 1e-9;
  const auto& e = shape.size.extents;

  switch (shape.kind) {
    case ShapeKind::Circle:
      return lx * lx + ly * ly <= double(e[0]) * e[0] + eps;
    case ShapeKind::Square:
      return std::abs(lx) <= e[0] / 2.0 + eps && std::abs(ly) <= e[0] / 2.0 + eps;
    case ShapeKind::Rectangle:
      return std::abs(lx) <= e[0] + eps && std::abs(ly) <= e[1] + eps;
    case ShapeKind::Ellipse: {
      const double u = lx / e[0], v = ly / e[1];
      return u * u + v * v <= 1.0 + eps;
    }
    case ShapeKind::Triangle: {
      // Equilateral with apex on +y: the three edges lie at distance R/2
      // from the center with outward normals at 270, 30 and 150 degrees.
      const double half_r = e[0] / 2.0;
      for (double deg : {270.0, 30.0, 150.0}) {
        const double a = deg * std::numbers::pi / 180.0;
        if (lx * std::cos(a) + ly * std::sin(a) > half_r + eps) return false;
      }
      return true;
    }
  }
  return false;
}

RgbImage rasterize(const SceneConfig& scene, Rgb background) {
  const Canvas& canvas = scene.canvas();
  RgbImage img(canvas.width, canvas.height, background);
  for (const ShapeInstance& shape : scene.shapes()) {
    const AABB box = bounding_box(shape);
    const Rgb fill = color_value(shape.color);
    const int x0 = std::max(box.min_x, 0);
    const int y0 = std::max(box.min_y, 0);
    const int x1 = std::min(box.max_x, canvas.width - 1);
    const int y1 = std::min(box.max_y, canvas.height - 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (shape_contains(shape, x, y)) img.set(x, y, fill);
      }
    }
  }
  return img;
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// libpng reports errors by longjmp; the message is parked here so it can be
// turned into an exception once control is back in C++ frames.
struct PngErrorSlot {
  char message[256] = "libpng error";
};

void png_error_fn(png_structp png, png_const_charp msg) {
  auto* slot = static_cast<PngErrorSlot*>(png_get_error_ptr(png));
  if (slot && msg) std::snprintf(slot->message, sizeof slot->message, "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

// Only trivially destructible locals live between setjmp and the libpng
// calls below.
bool encode_rows(std::FILE* fp, png_uint_32 width, png_uint_32 height,
                 png_bytep* rows, PngErrorSlot& err) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err,
                                            png_error_fn, png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

bool decode_rgb(std::FILE* fp, std::vector<png_byte>& out, png_uint_32& width,
                png_uint_32& height, PngErrorSlot& err) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                           png_error_fn, png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  if (stride != std::size_t{width} * 3 || out.size() < stride * height) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(png, out.data() + std::size_t{y} * stride, nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

// Reads just the IHDR dimensions so the pixel buffer can be allocated before
// decoding.
bool probe_dimensions(std::FILE* fp, png_uint_32& width, png_uint_32& height,
                      PngErrorSlot& err) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                           png_error_fn, png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

}  // namespace

void write_png(const RgbImage& image, const std::filesystem::path& path) {
  const auto width = static_cast<png_uint_32>(image.width());
  const auto height = static_cast<png_uint_32>(image.height());
  std::vector<png_byte> buffer(std::size_t{width} * height * 3);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = buffer.data() + std::size_t{y} * width * 3;
    for (png_uint_32 x = 0; x < width; ++x) {
      const Rgb c = image.at(static_cast<int>(x), static_cast<int>(y));
      rows[y][3 * x] = c.r;
      rows[y][3 * x + 1] = c.g;
      rows[y][3 * x + 2] = c.b;
    }
  }

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  PngErrorSlot err;
  bool ok = false;
  {
    FilePtr fp(std::fopen(tmp.c_str(), "wb"));
    if (!fp) {
      throw ImageIoError("cannot open " + tmp.string() + " for writing");
    }
    ok = encode_rows(fp.get(), width, height, rows.data(), err) &&
         std::fflush(fp.get()) == 0 && !std::ferror(fp.get());
    if (std::fclose(fp.release()) != 0) ok = false;
  }
  std::error_code ec;
  if (!ok) {
    std::filesystem::remove(tmp, ec);
    throw ImageIoError("failed writing " + path.string() + ": " + err.message);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ImageIoError("cannot move PNG into place at " + path.string());
  }
}

RgbImage read_png(const std::filesystem::path& path) {
  PngErrorSlot err;
  png_uint_32 width = 0, height = 0;
  {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw ImageIoError("cannot open " + path.string());
    if (!probe_dimensions(fp.get(), width, height, err)) {
      throw ImageIoError("cannot decode " + path.string() + ": " + err.message);
    }
  }
  std::vector<png_byte> buffer(std::size_t{width} * height * 3);
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw ImageIoError("cannot open " + path.string());
  if (!decode_rgb(fp.get(), buffer, width, height, err)) {
    throw ImageIoError("cannot decode " + path.string() + ": " + err.message);
  }
  RgbImage img(static_cast<int>(width), static_cast<int>(height));
  for (png_uint_32 y = 0; y < height; ++y) {
    for (png_uint_32 x = 0; x < width; ++x) {
      const png_byte* p = buffer.data() + (std::size_t{y} * width + x) * 3;
      img.set(static_cast<int>(x), static_cast<int>(y), {p[0], p[1], p[2]});
    }
  }
  return img;
}

}  // namespace shapebench
