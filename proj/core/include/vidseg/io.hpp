// Copyright 2026 The vidseg Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef VIDSEG_IO_HPP
#define VIDSEG_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vidseg/detection.hpp"
#include "vidseg/image.hpp"
#include "vidseg/tube.hpp"

namespace vidseg {

inline constexpr float kFloMagic = 202021.25f;

/// Middlebury .flo: little-endian float magic 202021.25, int32 width, int32
/// height, then width*height (u, v) float pairs in row-major order. Throws
/// FormatError on a wrong magic, bad dimensions or truncated data.
FlowField read_flo(std::string_view bytes);
std::string write_flo(const FlowField& flow);

FlowField read_flo_file(const std::filesystem::path& path);
void write_flo_file(const std::filesystem::path& path, const FlowField& flow);

/// Binary PGM (P5), 8- or 16-bit (big-endian samples, as PGM requires).
LabelImage read_pgm(const std::filesystem::path& path);
/// Writes 8-bit when every label is in [0, 255] and `force_16bit` is false,
/// 16-bit otherwise. Throws InputError for labels outside [0, 65535].
void write_pgm(const std::filesystem::path& path, const LabelImage& labels,
               bool force_16bit = false);

/// Binary PPM (P6, maxval 255).
Image read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Image& img);

/// 8-bit PNG (gray, gray+alpha, RGB, RGBA, palette); alpha is dropped.
Image read_png(const std::filesystem::path& path);

/// PPM or PNG, chosen by file signature.
Image read_image(const std::filesystem::path& path);

/// Detection records, one per line:
///   frame x_min y_min x_max y_max score category
/// Blank lines and lines starting with '#' are ignored. Records are validated
/// (FormatError naming the line) and returned sorted by frame, stable.
std::vector<Detection> parse_detections(std::string_view text);
std::string format_detections(std::span<const Detection> detections);

std::vector<Detection> read_detections_file(const std::filesystem::path& path);
void write_detections_file(const std::filesystem::path& path,
                           std::span<const Detection> detections);

/// JSON list of tubes (category, frames, boxes, provenance, score).
std::string tubes_to_json(std::span<const Tube> tubes);
std::vector<Tube> tubes_from_json(std::string_view json);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace vidseg

#endif  // VIDSEG_IO_HPP
