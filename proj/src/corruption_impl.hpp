#pragma once

// Internal: one function per transform, uniform signature so the dispatcher
// can hold a single table. `param` is the severity schedule value (0 for the
// binary transforms); `rng` is consumed only by the stochastic transforms,
// each of which documents its fixed draw order.

#include "robench/corruptions.hpp"
#include "robench/determinism.hpp"
#include "robench/image.hpp"

namespace robench::detail {

// blur family
Image aug_gaussian_blur(const Image&, double, RngStream&);
Image aug_motion_blur(const Image&, double, RngStream&);
Image aug_defocus_blur(const Image&, double, RngStream&);
Image aug_zoom_blur(const Image&, double, RngStream&);
Image aug_glass_blur(const Image&, double, RngStream&);

// noise family
Image aug_gaussian_noise(const Image&, double, RngStream&);
Image aug_shot_noise(const Image&, double, RngStream&);
Image aug_speckle_noise(const Image&, double, RngStream&);
Image aug_salt_pepper(const Image&, double, RngStream&);

// weather family
Image aug_fog(const Image&, double, RngStream&);
Image aug_frost(const Image&, double, RngStream&);
Image aug_snow(const Image&, double, RngStream&);
Image aug_rain(const Image&, double, RngStream&);
Image aug_spatter(const Image&, double, RngStream&);

// digital family
Image aug_jpeg_compression(const Image&, double, RngStream&);
Image aug_pixelate(const Image&, double, RngStream&);

// geometric family
Image aug_rotate(const Image&, double, RngStream&);
Image aug_shear(const Image&, double, RngStream&);
Image aug_affine(const Image&, double, RngStream&);
Image aug_perspective(const Image&, double, RngStream&);
Image aug_elastic(const Image&, double, RngStream&);

// color/tone family
Image aug_brightness(const Image&, double, RngStream&);
Image aug_contrast(const Image&, double, RngStream&);
Image aug_saturation(const Image&, double, RngStream&);
Image aug_gamma(const Image&, double, RngStream&);
Image aug_hue_shift(const Image&, double, RngStream&);
Image aug_color_jitter(const Image&, double, RngStream&);

// occlusion family
Image aug_random_occlusion(const Image&, double, RngStream&);
Image aug_grid_mask(const Image&, double, RngStream&);
Image aug_center_occlusion(const Image&, double, RngStream&);

// resolution family
Image aug_downsample(const Image&, double, RngStream&);
Image aug_upsample(const Image&, double, RngStream&);
Image aug_sharpen(const Image&, double, RngStream&);
Image aug_posterize(const Image&, double, RngStream&);
Image aug_solarize(const Image&, double, RngStream&);

// overlays
Image aug_text_overlay(const Image&, double, RngStream&);
Image aug_watermark(const Image&, double, RngStream&);
Image aug_add_border(const Image&, double, RngStream&);

// binary
Image aug_flip_h(const Image&, double, RngStream&);
Image aug_flip_v(const Image&, double, RngStream&);
Image aug_grayscale(const Image&, double, RngStream&);
Image aug_invert(const Image&, double, RngStream&);
Image aug_channel_swap(const Image&, double, RngStream&);
Image aug_equalize(const Image&, double, RngStream&);
Image aug_autocontrast(const Image&, double, RngStream&);

}  // namespace robench::detail
