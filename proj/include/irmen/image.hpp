#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace irmen {

/// Binary image with pixels in {-1, +1}, row-major.
struct Image {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> px;

  Image() = default;
  Image(std::size_t r, std::size_t c, int fill = -1) : rows(r), cols(c), px(r * c, fill) {}

  std::size_t size() const { return px.size(); }
  int& at(std::size_t r, std::size_t c) { return px[r * cols + c]; }
  int at(std::size_t r, std::size_t c) const { return px[r * cols + c]; }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Text format: one row per line, entries "+1"/"-1" (or "1") separated by
/// whitespace. Blank lines and '#' comments are ignored.
Image parse_image(std::string_view text);
std::string format_image(const Image& img);
Image read_image_file(const std::string& path);
void write_image_file(const std::string& path, const Image& img);

/// Quarter turn clockwise.
Image rotate90(const Image& img);
/// Mirror left-right.
Image reflect(const Image& img);

}  // namespace irmen
