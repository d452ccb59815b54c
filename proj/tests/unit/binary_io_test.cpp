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

#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "qcnet/binary_io.hpp"
#include "qcnet/error.hpp"

namespace qcnet {
namespace {

TEST(BinaryIo, RoundTrip) {
  std::stringstream buf;
  BinaryWriter w(buf);
  w.magic("QCXX");
  w.u8(200);
  w.u32(0xdeadbeef);
  w.u64(0x0123456789abcdefULL);
  w.f64(-0.1);
  w.f64(std::numeric_limits<double>::denorm_min());
  w.short_string("qctn");

  BinaryReader r(buf, "test");
  r.expect_magic("QCXX");
  EXPECT_EQ(r.u8(), 200);
  EXPECT_EQ(r.u32(), 0xdeadbeefu);
  EXPECT_EQ(r.u64(), 0x0123456789abcdefULL);
  EXPECT_EQ(r.f64(), -0.1);
  EXPECT_EQ(r.f64(), std::numeric_limits<double>::denorm_min());
  EXPECT_EQ(r.short_string(), "qctn");
  EXPECT_TRUE(r.at_end());
}

TEST(BinaryIo, LittleEndianLayout) {
  std::stringstream buf;
  BinaryWriter w(buf);
  w.u32(0x04030201);
  const std::string s = buf.str();
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], 1);
  EXPECT_EQ(s[3], 4);
}

TEST(BinaryIo, TruncatedAndBadMagic) {
  std::stringstream a("QC");
  BinaryReader ra(a, "short");
  EXPECT_THROW(ra.expect_magic("QCU1"), IoError);
  std::stringstream b("QCZZ");
  BinaryReader rb(b, "magic");
  EXPECT_THROW(rb.expect_magic("QCU1"), IoError);
}

TEST(BinaryIo, SniffUnknown) {
  const auto dir = testing::scratch_dir("sniff");
  {
    std::ofstream f(dir / "x.bin", std::ios::binary);
    f << "hello";
  }
  EXPECT_EQ(sniff_magic(dir / "x.bin"), "");
  EXPECT_THROW(sniff_magic(dir / "missing.bin"), IoError);
}

}  // namespace
}  // namespace qcnet
