#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "shapebench/scene.hpp"

namespace shapebench {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};

/// Row-major 8-bit RGB raster.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, Rgb fill = kWhite);

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, Rgb c) { pixels_[index(x, y)] = c; }

  const std::vector<Rgb>& pixels() const { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

Rgb color_value(ColorName color);

/// Whether the point (x, y), in image coordinates, lies inside the rotated
/// outline. Boundary points count as inside.
bool shape_contains(const ShapeInstance& shape, double x, double y);

/// Fills shapes in scene order on a white canvas. Pixel (x, y) is sampled at
/// the point (x, y); there is no anti-aliasing.
RgbImage rasterize(const SceneConfig& scene, Rgb background = kWhite);

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes an 8-bit RGB PNG with fixed encoder settings. The file is written
/// to a temporary sibling and renamed into place, so a failed write leaves
/// nothing behind.
void write_png(const RgbImage& image, const std::filesystem::path& path);

RgbImage read_png(const std::filesystem::path& path);

}  // namespace shapebench
