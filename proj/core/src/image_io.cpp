#include "tv4/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tv4 {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

bool has_suffix(const std::string& s, const std::string& suf) {
  if (s.size() < suf.size()) return false;
  std::string tail = s.substr(s.size() - suf.size());
  for (char& c : tail) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return tail == suf;
}

// Skips whitespace and '#' comment lines, then parses a nonnegative integer.
int pnm_next_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) fail(path, "corrupt header");
  long v = 0;
  while (c != EOF && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    if (v > 1 << 30) fail(path, "corrupt header");
    c = in.get();
  }
  return static_cast<int>(v);
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) fail(path, "not a PGM file");
  const bool binary = magic[1] == '5';
  const int width = pnm_next_int(in, path);
  const int height = pnm_next_int(in, path);
  const int maxval = pnm_next_int(in, path);
  if (maxval <= 0 || maxval > 255) fail(path, "only 8-bit PGM is supported");
  if (width < 2 || height < 2) fail(path, "image smaller than 2x2");

  std::vector<double> data(static_cast<std::size_t>(width) * height);
  if (binary) {
    std::vector<unsigned char> raw(data.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(path, "truncated pixel data");
    for (std::size_t p = 0; p < raw.size(); ++p) data[p] = raw[p] / 255.0;
  } else {
    for (std::size_t p = 0; p < data.size(); ++p) {
      const int v = pnm_next_int(in, path);
      if (v > maxval) fail(path, "sample exceeds maxval");
      data[p] = v / 255.0;
    }
  }
  return Image(height, width, std::move(data));
}

Image read_png(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) fail(path, "cannot open");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(path, "libpng init failed");
  }
  std::vector<unsigned char> pixels;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(path, "corrupt PNG");
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(path, "only grayscale PNG is supported");
  }
  if (depth > 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(path, "only 8-bit PNG is supported");
  }
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  pixels.resize(static_cast<std::size_t>(width) * height);
  rows.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) rows[r] = pixels.data() + static_cast<std::size_t>(r) * width;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  if (width < 2 || height < 2) fail(path, "image smaller than 2x2");
  std::vector<double> data(pixels.size());
  for (std::size_t p = 0; p < pixels.size(); ++p) data[p] = pixels[p] / 255.0;
  return Image(static_cast<int>(height), static_cast<int>(width), std::move(data));
}

std::vector<unsigned char> quantize(const Image& x) {
  std::vector<unsigned char> out(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    double v = x.data()[p];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    out[p] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  return out;
}

void write_pgm(const Image& x, const std::string& path) {
  const std::vector<unsigned char> bytes = quantize(x);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(path, "cannot open for writing");
  out << "P5\n" << x.cols() << " " << x.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(path, "write failed");
}

void write_png(const Image& x, const std::string& path) {
  std::vector<unsigned char> bytes = quantize(x);
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) fail(path, "cannot open for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    fail(path, "libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    fail(path, "PNG write failed");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(x.cols()), static_cast<png_uint_32>(x.rows()),
               8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < x.rows(); ++r)
    png_write_row(png, bytes.data() + static_cast<std::size_t>(r) * x.cols());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

Image read_image(const std::string& path) {
  if (has_suffix(path, ".png")) return read_png(path);
  if (has_suffix(path, ".pgm")) return read_pgm(path);
  // fall back on content sniffing for extensionless paths
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  in.close();
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
  if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return read_png(path);
  fail(path, "unsupported format (expect 8-bit grayscale PGM or PNG)");
}

void write_image(const Image& x, const std::string& path) {
  const std::string tmp = path + ".tmp";
  if (has_suffix(path, ".png")) {
    write_png(x, tmp);
  } else if (has_suffix(path, ".pgm")) {
    write_pgm(x, tmp);
  } else {
    fail(path, "unsupported output extension (use .pgm or .png)");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(path, "atomic rename failed: " + ec.message());
}

Fixture fixture_from_name(const std::string& name) {
  if (name == "rhombus") return Fixture::rhombus;
  if (name == "stripes") return Fixture::stripes;
  if (name == "checker") return Fixture::checker;
  if (name == "piecewise") return Fixture::piecewise;
  throw std::invalid_argument("unknown fixture: " + name);
}

Image synth_fixture(Fixture kind, int n, std::uint64_t seed) {
  (void)seed;  // fixtures are deterministic by construction
  Image x(n, n);
  const double c = (n - 1) / 2.0;
  switch (kind) {
    case Fixture::rhombus: {
      const double r = 0.70 * n / 2.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          x(i, j) = (std::abs(i - c) + std::abs(j - c) <= r) ? 1.0 : 0.0;
      break;
    }
    case Fixture::stripes: {
      const int w = std::max(2, n / 8);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = ((j / w) % 2 == 0) ? 0.25 : 0.75;
      break;
    }
    case Fixture::checker: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = ((i + j) % 2 == 0) ? 0.0 : 1.0;
      break;
    }
    case Fixture::piecewise: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.15;
          if (i >= n / 8 && i < 3 * n / 8 && j >= n / 2 && j < 7 * n / 8) v = 0.85;
          if (i >= n / 2 && i < 7 * n / 8 && j >= n / 8 && j < 5 * n / 16) v = 0.5;
          if (std::abs(i - 5.0 * n / 8.0) + std::abs(j - 5.0 * n / 8.0) <= n / 6.0) v = 0.65;
          x(i, j) = v;
        }
      break;
    }
  }
  return x;
}

Image add_gaussian_noise(const Image& x, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
  Image out = x;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53; };
  bool have_spare = false;
  double spare = 0.0;
  for (double& v : out.data()) {
    double z;
    if (have_spare) {
      z = spare;
      have_spare = false;
    } else {
      const double u1 = uniform();
      const double u2 = uniform();
      const double mag = std::sqrt(-2.0 * std::log(u1));
      z = mag * std::cos(2.0 * M_PI * u2);
      spare = mag * std::sin(2.0 * M_PI * u2);
      have_spare = true;
    }
    v += sigma * z;
  }
  return out;
}

}  // namespace tv4
