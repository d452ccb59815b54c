// Copyright 2026 The qcnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>

namespace qcnet {

/// Little-endian primitive writer shared by the QCU1/QCDS1/QCKP1/QCOB1 formats.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void magic(std::string_view tag);
  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void f64s(std::span<const double> values);
  /// u8 length prefix followed by raw bytes.
  void short_string(std::string_view s);

 private:
  void bytes(const unsigned char* data, std::size_t n);
  std::ostream& out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

  /// Throws IoError if the next bytes are not `tag`.
  void expect_magic(std::string_view tag);
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  void f64s(std::span<double> values);
  std::string short_string();
  /// True if the stream has no more bytes.
  bool at_end();

 private:
  void bytes(unsigned char* data, std::size_t n);
  std::istream& in_;
  std::string what_;
};

/// Reads the leading magic tag of a file ("QCU1", "QCDS1", ...); empty if unknown.
std::string sniff_magic(const std::filesystem::path& path);

std::ofstream open_for_write(const std::filesystem::path& path);
std::ifstream open_for_read(const std::filesystem::path& path);

}  // namespace qcnet
