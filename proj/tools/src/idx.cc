// Copyright 2026 The mbdopt Authors
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

#include "mbdcli/idx.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "mbd/error.h"

namespace mbd::cli {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_u32_be(std::istream& in, const char* what) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw Error(ErrorCode::kTruncatedFile,
                std::string("unexpected end of file reading ") + what);
  }
  return (static_cast<std::uint32_t>(bytes[0]) << 24) |
         (static_cast<std::uint32_t>(bytes[1]) << 16) |
         (static_cast<std::uint32_t>(bytes[2]) << 8) |
         static_cast<std::uint32_t>(bytes[3]);
}

std::vector<unsigned char> read_payload(std::istream& in, std::size_t count,
                                        const char* what) {
  std::vector<unsigned char> bytes(count);
  if (!in.read(reinterpret_cast<char*>(bytes.data()),
               static_cast<std::streamsize>(count))) {
    throw Error(ErrorCode::kTruncatedFile,
                std::string("unexpected end of file reading ") + what);
  }
  return bytes;
}

}  // namespace

Dataset load_idx(std::istream& images, std::istream& labels) {
  std::uint32_t image_magic = read_u32_be(images, "image magic");
  if (image_magic != kImageMagic) {
    throw Error(ErrorCode::kBadMagic,
                "image file magic is " + std::to_string(image_magic) +
                    ", expected " + std::to_string(kImageMagic));
  }
  std::uint32_t n_images = read_u32_be(images, "image count");
  std::uint32_t rows = read_u32_be(images, "image rows");
  std::uint32_t cols = read_u32_be(images, "image cols");

  std::uint32_t label_magic = read_u32_be(labels, "label magic");
  if (label_magic != kLabelMagic) {
    throw Error(ErrorCode::kBadMagic,
                "label file magic is " + std::to_string(label_magic) +
                    ", expected " + std::to_string(kLabelMagic));
  }
  std::uint32_t n_labels = read_u32_be(labels, "label count");
  if (n_labels != n_images) {
    throw Error(ErrorCode::kDimMismatch,
                std::to_string(n_images) + " images vs " +
                    std::to_string(n_labels) + " labels");
  }

  std::size_t pixels = static_cast<std::size_t>(rows) * cols;
  std::vector<unsigned char> image_bytes =
      read_payload(images, static_cast<std::size_t>(n_images) * pixels,
                   "image payload");
  std::vector<unsigned char> label_bytes =
      read_payload(labels, n_labels, "label payload");

  Dataset dataset;
  dataset.features.resize(n_images, static_cast<Eigen::Index>(pixels));
  for (std::uint32_t k = 0; k < n_images; ++k) {
    for (std::size_t j = 0; j < pixels; ++j) {
      dataset.features(k, static_cast<Eigen::Index>(j)) =
          image_bytes[k * pixels + j] / 255.0;
    }
  }
  dataset.labels.assign(label_bytes.begin(), label_bytes.end());
  int max_label =
      dataset.labels.empty()
          ? -1
          : *std::max_element(dataset.labels.begin(), dataset.labels.end());
  dataset.n_classes = std::max(max_label + 1, 2);
  return dataset;
}

Dataset load_idx_files(const std::string& images_path,
                       const std::string& labels_path) {
  std::ifstream images(images_path, std::ios::binary);
  if (!images) {
    throw Error(ErrorCode::kIoError, "cannot open " + images_path);
  }
  std::ifstream labels(labels_path, std::ios::binary);
  if (!labels) {
    throw Error(ErrorCode::kIoError, "cannot open " + labels_path);
  }
  return load_idx(images, labels);
}

}  // namespace mbd::cli
