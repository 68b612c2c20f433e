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

#ifndef MBDCLI_IDX_H_
#define MBDCLI_IDX_H_

#include <iosfwd>
#include <string>

#include "mbd/mlp.h"

namespace mbd::cli {

// Parses a big-endian IDX image/label pair (magic 0x00000803 for u8 image
// tensors count x rows x cols, 0x00000801 for u8 label vectors). Pixels are
// scaled to [0, 1]; image and label counts must agree. Throws BAD_MAGIC,
// DIM_MISMATCH, or TRUNCATED_FILE.
Dataset load_idx(std::istream& images, std::istream& labels);

// file-opening wrapper; throws IO_ERROR when a file cannot be opened
Dataset load_idx_files(const std::string& images_path,
                       const std::string& labels_path);

}  // namespace mbd::cli

#endif  // MBDCLI_IDX_H_
