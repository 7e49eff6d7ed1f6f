#include "irmen/image.hpp"

#include <fstream>
#include <sstream>

#include "irmen/errors.hpp"

namespace irmen {

Image parse_image(std::string_view text) {
  Image img;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::vector<int> values;
    for (std::string tok; row >> tok;) {
      if (tok == "+1" || tok == "1") {
        values.push_back(1);
      } else if (tok == "-1") {
        values.push_back(-1);
      } else {
        throw ParseError("image line " + std::to_string(line_no) + ": bad pixel '" + tok + "'");
      }
    }
    if (values.empty()) continue;
    if (img.cols == 0) {
      img.cols = values.size();
    } else if (values.size() != img.cols) {
      throw ParseError("image line " + std::to_string(line_no) + ": expected " +
                       std::to_string(img.cols) + " pixels, got " +
                       std::to_string(values.size()));
    }
    img.px.insert(img.px.end(), values.begin(), values.end());
    ++img.rows;
  }
  if (img.rows == 0) throw ParseError("image has no pixels");
  return img;
}

std::string format_image(const Image& img) {
  std::string out;
  out.reserve(img.size() * 3);
  for (std::size_t r = 0; r < img.rows; ++r) {
    for (std::size_t c = 0; c < img.cols; ++c) {
      if (c) out += ' ';
      out += img.at(r, c) > 0 ? "+1" : "-1";
    }
    out += '\n';
  }
  return out;
}

Image read_image_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open image file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_image(buf.str());
}

void write_image_file(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image file '" + path + "'");
  out << format_image(img);
}

Image rotate90(const Image& img) {
  Image out(img.cols, img.rows);
  for (std::size_t r = 0; r < img.rows; ++r) {
    for (std::size_t c = 0; c < img.cols; ++c) out.at(c, img.rows - 1 - r) = img.at(r, c);
  }
  return out;
}

Image reflect(const Image& img) {
  Image out(img.rows, img.cols);
  for (std::size_t r = 0; r < img.rows; ++r) {
    for (std::size_t c = 0; c < img.cols; ++c) out.at(r, img.cols - 1 - c) = img.at(r, c);
  }
  return out;
}

}  // namespace irmen
