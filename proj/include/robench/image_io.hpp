#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robench/image.hpp"

namespace robench {

// Reads a PNG or JPEG file (sniffed by magic bytes) into 8-bit RGB.
Image read_image(const std::string& path);

// Lossless PNG out; fixed encoder settings so identical pixels give
// identical bytes.
void write_png(const Image& img, const std::string& path);
std::vector<std::uint8_t> encode_png(const Image& img);

// Encode at the given quality and decode back. Same dimensions; the codec
// build is part of the determinism envelope.
Image jpeg_recompress(const Image& img, int quality);

}  // namespace robench
