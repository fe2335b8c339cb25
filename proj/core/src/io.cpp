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
#include "vidseg/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "vidseg/errors.hpp"

namespace vidseg {

namespace {

static_assert(sizeof(float) == 4);

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

float get_f32(std::string_view in, std::size_t at) {
  return std::bit_cast<float>(get_u32(in, at));
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

// Reads a whitespace/comment separated header token from a PNM stream.
std::string pnm_token(std::istream& is) {
  std::string tok;
  char c = 0;
  while (is.get(c)) {
    if (c == '#') {
      std::string skip;
      std::getline(is, skip);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

int pnm_int(std::istream& is, const std::filesystem::path& path) {
  const std::string tok = pnm_token(is);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw FormatError(path.string() + ": bad PNM header field '" + tok + "'");
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path.string());
  return is;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path.string());
  return os;
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kDetected: return "detected";
    case Provenance::kInterpolated: return "interpolated";
    case Provenance::kMissing: return "missing";
  }
  return "missing";
}

}  // namespace

FlowField read_flo(std::string_view bytes) {
  if (bytes.size() < 12) throw FormatError(".flo stream truncated in header");
  if (get_f32(bytes, 0) != kFloMagic) throw FormatError(".flo magic mismatch");
  const auto w = static_cast<std::int32_t>(get_u32(bytes, 4));
  const auto h = static_cast<std::int32_t>(get_u32(bytes, 8));
  if (w <= 0 || h <= 0 || w > (1 << 20) || h > (1 << 20)) {
    throw FormatError(".flo has invalid dimensions " + std::to_string(w) + "x" +
                      std::to_string(h));
  }
  const auto n = static_cast<std::size_t>(w) * h;
  if (bytes.size() < 12 + n * 8) throw FormatError(".flo stream truncated in data");
  FlowField f(w, h);
  for (std::size_t i = 0; i < n; ++i) {
    f.u[i] = get_f32(bytes, 12 + 8 * i);
    f.v[i] = get_f32(bytes, 16 + 8 * i);
  }
  return f;
}

std::string write_flo(const FlowField& flow) {
  if (!flow.valid()) throw InputError("cannot serialize an invalid flow field");
  std::string out;
  out.reserve(12 + flow.u.size() * 8);
  put_f32(out, kFloMagic);
  put_u32(out, static_cast<std::uint32_t>(flow.width));
  put_u32(out, static_cast<std::uint32_t>(flow.height));
  for (std::size_t i = 0; i < flow.u.size(); ++i) {
    put_f32(out, flow.u[i]);
    put_f32(out, flow.v[i]);
  }
  return out;
}

FlowField read_flo_file(const std::filesystem::path& path) {
  try {
    return read_flo(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_flo_file(const std::filesystem::path& path, const FlowField& flow) {
  write_text_file(path, write_flo(flow));
}

LabelImage read_pgm(const std::filesystem::path& path) {
  auto is = open_in(path);
  if (pnm_token(is) != "P5") throw FormatError(path.string() + ": not a binary PGM");
  const int w = pnm_int(is, path), h = pnm_int(is, path), maxval = pnm_int(is, path);
  if (maxval > 65535) throw FormatError(path.string() + ": maxval above 65535");
  const bool wide = maxval > 255;
  const auto n = static_cast<std::size_t>(w) * h;
  std::string data(n * (wide ? 2 : 1), '\0');
  if (!is.read(data.data(), static_cast<std::streamsize>(data.size())))
    throw FormatError(path.string() + ": truncated PGM data");
  LabelImage out(w, h);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = wide ? (static_cast<unsigned char>(data[2 * i]) << 8) |
                        static_cast<unsigned char>(data[2 * i + 1])
                  : static_cast<unsigned char>(data[i]);
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const LabelImage& labels,
               bool force_16bit) {
  const auto span = labels.labels();
  const auto [lo, hi] = std::minmax_element(span.begin(), span.end());
  if (!span.empty() && (*lo < 0 || *hi > 65535))
    throw InputError("labels do not fit in a PGM");
  const bool wide = force_16bit || (!span.empty() && *hi > 255);
  std::string out = "P5\n" + std::to_string(labels.width()) + " " +
                    std::to_string(labels.height()) + "\n" + (wide ? "65535" : "255") + "\n";
  for (std::int32_t v : span) {
    if (wide) out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
  }
  write_text_file(path, out);
}

Image read_ppm(const std::filesystem::path& path) {
  auto is = open_in(path);
  if (pnm_token(is) != "P6") throw FormatError(path.string() + ": not a binary PPM");
  const int w = pnm_int(is, path), h = pnm_int(is, path), maxval = pnm_int(is, path);
  if (maxval != 255) throw FormatError(path.string() + ": only 8-bit PPM is supported");
  std::vector<Rgb> px(static_cast<std::size_t>(w) * h);
  std::string data(px.size() * 3, '\0');
  if (!is.read(data.data(), static_cast<std::streamsize>(data.size())))
    throw FormatError(path.string() + ": truncated PPM data");
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = {static_cast<std::uint8_t>(data[3 * i]), static_cast<std::uint8_t>(data[3 * i + 1]),
             static_cast<std::uint8_t>(data[3 * i + 2])};
  }
  return Image(w, h, std::move(px));
}

void write_ppm(const std::filesystem::path& path, const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  out.reserve(out.size() + img.size() * 3);
  for (const Rgb& c : img.pixels()) {
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  write_text_file(path, out);
}

Image read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw FormatError(path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw FormatError(path.string() + ": " + msg);
  }
  const int w = static_cast<int>(image.width), h = static_cast<int>(image.height);
  std::vector<Rgb> px(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
  return Image(w, h, std::move(px));
}

Image read_image(const std::filesystem::path& path) {
  auto is = open_in(path);
  char sig[8] = {};
  is.read(sig, sizeof sig);
  if (is.gcount() >= 2 && sig[0] == 'P' && sig[1] == '6') return read_ppm(path);
  static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (is.gcount() == 8 && std::memcmp(sig, kPng, 8) == 0) return read_png(path);
  throw FormatError(path.string() + ": unsupported image format (need PPM or PNG)");
}

std::vector<Detection> parse_detections(std::string_view text) {
  std::vector<Detection> out;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream rec(line);
    Detection d;
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    std::string extra;
    if (!(rec >> d.frame >> x0 >> y0 >> x1 >> y1 >> d.score >> d.category) || (rec >> extra)) {
      throw FormatError("detections line " + std::to_string(line_no) +
                        ": expected 'frame x_min y_min x_max y_max score category'");
    }
    try {
      d.box = BoundingBox(x0, y0, x1, y1);
      validate(d);
    } catch (const InputError& e) {
      throw FormatError("detections line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return out;
}

std::string format_detections(std::span<const Detection> detections) {
  std::ostringstream os;
  os.precision(17);
  os << "# frame x_min y_min x_max y_max score category\n";
  for (const Detection& d : detections) {
    os << d.frame << ' ' << d.box.x_min() << ' ' << d.box.y_min() << ' ' << d.box.x_max()
       << ' ' << d.box.y_max() << ' ' << d.score << ' ' << d.category << '\n';
  }
  return os.str();
}

std::vector<Detection> read_detections_file(const std::filesystem::path& path) {
  try {
    return parse_detections(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_detections_file(const std::filesystem::path& path,
                           std::span<const Detection> detections) {
  write_text_file(path, format_detections(detections));
}

std::string tubes_to_json(std::span<const Tube> tubes) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Tube& t : tubes) {
    nlohmann::ordered_json j;
    j["category"] = t.category;
    j["first_frame"] = t.first_frame;
    j["last_frame"] = t.last_frame();
    j["path_score"] = t.path_score;
    auto boxes = nlohmann::ordered_json::array();
    auto prov = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < t.boxes.size(); ++k) {
      const BoundingBox& b = t.boxes[k];
      boxes.push_back({b.x_min(), b.y_min(), b.x_max(), b.y_max()});
      prov.push_back(provenance_name(t.provenance[k]));
    }
    j["boxes"] = std::move(boxes);
    j["provenance"] = std::move(prov);
    j["detection_ids"] = t.detection_ids;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<Tube> tubes_from_json(std::string_view text) {
  std::vector<Tube> out;
  try {
    const auto arr = nlohmann::json::parse(text);
    for (const auto& j : arr) {
      Tube t;
      t.category = j.at("category").get<std::string>();
      t.first_frame = j.at("first_frame").get<int>();
      t.path_score = j.at("path_score").get<double>();
      for (const auto& b : j.at("boxes"))
        t.boxes.emplace_back(b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                             b.at(3).get<int>());
      for (const auto& p : j.at("provenance")) {
        const auto s = p.get<std::string>();
        t.provenance.push_back(s == "detected"       ? Provenance::kDetected
                               : s == "interpolated" ? Provenance::kInterpolated
                                                     : Provenance::kMissing);
      }
      if (t.provenance.size() != t.boxes.size())
        throw FormatError("tube provenance and boxes differ in length");
      t.detection_ids = j.at("detection_ids").get<std::vector<int>>();
      out.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("tube JSON: ") + e.what());
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  auto is = open_in(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  auto os = open_out(path);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw InputError("failed writing " + path.string());
}

}  // namespace vidseg
