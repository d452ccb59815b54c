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

#include "qcnet/binary_io.hpp"

#include <array>
#include <bit>
#include <cstring>

#include "qcnet/error.hpp"

namespace qcnet {

void BinaryWriter::bytes(const unsigned char* data, std::size_t n) {
  out_.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
  if (!out_) throw IoError("write failed");
}

void BinaryWriter::magic(std::string_view tag) {
  bytes(reinterpret_cast<const unsigned char*>(tag.data()), tag.size());
}

void BinaryWriter::u8(std::uint8_t v) { bytes(&v, 1); }

void BinaryWriter::u32(std::uint32_t v) {
  std::array<unsigned char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  bytes(b.data(), b.size());
}

void BinaryWriter::u64(std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  bytes(b.data(), b.size());
}

void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::f64s(std::span<const double> values) {
  for (double v : values) f64(v);
}

void BinaryWriter::short_string(std::string_view s) {
  if (s.size() > 255) throw IoError("string too long for u8 length prefix");
  u8(static_cast<std::uint8_t>(s.size()));
  bytes(reinterpret_cast<const unsigned char*>(s.data()), s.size());
}

void BinaryReader::bytes(unsigned char* data, std::size_t n) {
  in_.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n));
  if (in_.gcount() != static_cast<std::streamsize>(n)) {
    throw IoError(what_ + ": unexpected end of file");
  }
}

void BinaryReader::expect_magic(std::string_view tag) {
  std::string got(tag.size(), '\0');
  bytes(reinterpret_cast<unsigned char*>(got.data()), got.size());
  if (got != tag) throw IoError(what_ + ": bad magic, expected " + std::string(tag));
}

std::uint8_t BinaryReader::u8() {
  unsigned char b = 0;
  bytes(&b, 1);
  return b;
}

std::uint32_t BinaryReader::u32() {
  std::array<unsigned char, 4> b{};
  bytes(b.data(), b.size());
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t BinaryReader::u64() {
  std::array<unsigned char, 8> b{};
  bytes(b.data(), b.size());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

void BinaryReader::f64s(std::span<double> values) {
  for (double& v : values) v = f64();
}

std::string BinaryReader::short_string() {
  const std::size_t n = u8();
  std::string s(n, '\0');
  bytes(reinterpret_cast<unsigned char*>(s.data()), n);
  return s;
}

bool BinaryReader::at_end() { return in_.peek() == std::char_traits<char>::eof(); }

std::string sniff_magic(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::array<char, 5> head{};
  in.read(head.data(), head.size());
  const std::string s(head.data(), static_cast<std::size_t>(in.gcount()));
  for (std::string_view tag : {"QCDS1", "QCKP1", "QCOB1"}) {
    if (s.starts_with(tag)) return std::string(tag);
  }
  if (s.starts_with("QCU1")) return "QCU1";
  return {};
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

}  // namespace qcnet
