#include "robench/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include "robench/errors.hpp"

namespace robench {

namespace {

struct JpegErr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {0};
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

Image decode_jpeg(const std::uint8_t* bytes, std::size_t size) {
  jpeg_decompress_struct cinfo;
  JpegErr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  jpeg_create_decompress(&cinfo);
  Image img;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw EncodeFailure(std::string("jpeg decode: ") + jerr.message);
  }
  jpeg_mem_src(&cinfo, bytes, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  img = Image(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.data.data() + static_cast<std::size_t>(cinfo.output_scanline) *
                                         cinfo.output_width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality) {
  jpeg_compress_struct cinfo;
  JpegErr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  jpeg_create_compress(&cinfo);
  unsigned char* buffer = nullptr;
  unsigned long buffer_size = 0;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    if (buffer) free(buffer);
    throw EncodeFailure(std::string("jpeg encode: ") + jerr.message);
  }
  jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
  cinfo.image_width = static_cast<JDIMENSION>(img.width);
  cinfo.image_height = static_cast<JDIMENSION>(img.height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width) * 3);
  while (cinfo.next_scanline < cinfo.image_height) {
    std::memcpy(row.data(),
                img.data.data() + static_cast<std::size_t>(cinfo.next_scanline) * img.width * 3,
                row.size());
    JSAMPROW rp = row.data();
    jpeg_write_scanlines(&cinfo, &rp, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::vector<std::uint8_t> out(buffer, buffer + buffer_size);
  free(buffer);
  return out;
}

struct PngReadCtx {
  const std::uint8_t* bytes;
  std::size_t size;
  std::size_t pos;
};

void png_read_cb(png_structp png, png_bytep out, png_size_t n) {
  auto* ctx = static_cast<PngReadCtx*>(png_get_io_ptr(png));
  if (ctx->pos + n > ctx->size) {
    png_error(png, "truncated png");
  }
  std::memcpy(out, ctx->bytes + ctx->pos, n);
  ctx->pos += n;
}

void png_write_cb(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void png_flush_cb(png_structp) {}

Image decode_png(const std::uint8_t* bytes, std::size_t size) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw EncodeFailure("png decode: alloc failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw EncodeFailure("png decode: alloc failed");
  }
  std::vector<png_bytep> rows;
  Image img;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw EncodeFailure("png decode failed");
  }
  PngReadCtx ctx{bytes, size, 0};
  png_set_read_fn(png, &ctx, png_read_cb);
  png_read_info(png, info);

  // Normalize every PNG layout to 8-bit RGB.
  png_set_expand(png);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  img = Image(static_cast<int>(w), static_cast<int>(h));
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = img.data.data() + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!f) throw ValidationError("cannot open image file: " + path);
  std::fseek(f.get(), 0, SEEK_END);
  const long size = std::ftell(f.get());
  std::fseek(f.get(), 0, SEEK_SET);
  std::vector<std::uint8_t> bytes(size > 0 ? static_cast<std::size_t>(size) : 0);
  if (!bytes.empty() && std::fread(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) {
    throw ValidationError("cannot read image file: " + path);
  }
  return bytes;
}

}  // namespace

Image read_image(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  static const std::uint8_t png_magic[4] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), png_magic, 4) == 0) {
    return decode_png(bytes.data(), bytes.size());
  }
  if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8) {
    return decode_jpeg(bytes.data(), bytes.size());
  }
  throw ValidationError("unsupported image format (need PNG or JPEG): " + path);
}

std::vector<std::uint8_t> encode_png(const Image& img) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw EncodeFailure("png encode: alloc failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw EncodeFailure("png encode: alloc failed");
  }
  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw EncodeFailure("png encode failed");
  }
  png_set_write_fn(png, &out, png_write_cb, png_flush_cb);
  // Pinned settings: fixed filter and compression level keep output bytes
  // reproducible for identical pixels.
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(img.data.data() +
                                             static_cast<std::size_t>(y) * img.width * 3));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const Image& img, const std::string& path) {
  const std::vector<std::uint8_t> bytes = encode_png(img);
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!f) throw EncodeFailure("cannot open for writing: " + path);
  if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) {
    throw EncodeFailure("short write: " + path);
  }
  return;
}

Image jpeg_recompress(const Image& img, int quality) {
  const std::vector<std::uint8_t> bytes = encode_jpeg(img, quality);
  return decode_jpeg(bytes.data(), bytes.size());
}

}  // namespace robench
