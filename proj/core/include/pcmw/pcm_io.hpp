// Copyright 2026 The pcm-weights Authors.
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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pcmw/pcm.hpp"

namespace pcmw {

enum class PcmFormat { kJson, kCsv };

std::string_view to_string(PcmFormat format) noexcept;
std::optional<PcmFormat> parse_format(std::string_view text);
/// ".json" or ".csv" (case-insensitive); std::nullopt otherwise.
std::optional<PcmFormat> format_from_extension(const std::filesystem::path& path);

// JSON: {"n": N, "entries": [[i, j, a_ij], ...]} with 1-based indices; only
// known comparisons are listed, reciprocals and diagonal are implied.
//
// CSV: N rows of N comma separated cells, row-major. Empty cell = missing,
// diagonal is 1 or empty.
//
// Parse failures throw Error(kParseError) naming the line/field or entry;
// the parsed entries then go through validate().
IncompletePCM parse_pcm(std::string_view text, PcmFormat format);
/// Values are written with 17 significant digits so parse_pcm(format_pcm(p))
/// == p exactly.
std::string format_pcm(const IncompletePCM& pcm, PcmFormat format);

/// Throws Error(kIoError) if the file cannot be read.
IncompletePCM read_pcm(const std::filesystem::path& path, PcmFormat format);
/// Throws Error(kIoError) if the file cannot be written.
void write_pcm(const IncompletePCM& pcm, const std::filesystem::path& path,
               PcmFormat format);

}  // namespace pcmw
