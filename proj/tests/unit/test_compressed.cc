// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "hgbt/compressed.h"
#include "hgbt/quantile.h"
#include "unit/helpers.h"

using hgbt::ContractError;
using hgbt::PackedBuffer;

TEST_SUITE("compressed_store") {
  TEST_CASE("symbol_bits") {
    CHECK(hgbt::SymbolBits(255) == 8);
    CHECK(hgbt::SymbolBits(256) == 9);
    CHECK(hgbt::SymbolBits(1) == 1);
    CHECK(hgbt::SymbolBits(0) == 1);
    CHECK(hgbt::SymbolBits(2) == 2);
    CHECK(hgbt::SymbolBits(0xFFFFFFFFu) == 32);
  }

  TEST_CASE("compress small round trip") {
    std::vector<std::uint32_t> s{3, 1, 2};
    auto buf = PackedBuffer::Compress(s, 2);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(buf.ReadSymbol(i) == s[i]);
    CHECK(PackedBuffer::Compress(std::vector<std::uint32_t>{5, 6, 7}, 3).ReadSymbol(1) == 6);
  }

  TEST_CASE("little-endian bit layout") {
    auto buf = PackedBuffer::Compress(std::vector<std::uint32_t>{3, 1, 2}, 2);
    // 3 | 1<<2 | 2<<4
    CHECK(buf.Words()[0] == 0b100111u);
    // straddling symbol: 5 bits starting at bit 60
    std::vector<std::uint32_t> s(13, 0);
    s[12] = 0b10111;
    auto wide = PackedBuffer::Compress(s, 5);
    CHECK(wide.Words()[0] == (std::uint64_t{0b0111} << 60));
    CHECK(wide.Words()[1] == 0b1u);
    CHECK(wide.ReadSymbol(12) == 0b10111u);
  }

  TEST_CASE("overflow and bounds contracts") {
    CHECK_THROWS_AS(PackedBuffer::Compress(std::vector<std::uint32_t>{7}, 2), ContractError);
    auto buf = PackedBuffer::Compress(std::vector<std::uint32_t>{1, 2, 3}, 2);
    CHECK_THROWS_AS(buf.ReadSymbol(3), ContractError);
    CHECK_THROWS_AS(PackedBuffer(4, 0), ContractError);
    CHECK_THROWS_AS(PackedBuffer(4, 33), ContractError);
  }

  TEST_CASE("exhaustive round trip in any order") {
    std::mt19937_64 rng(17);
    for (unsigned bits = 1; bits <= 32; ++bits) {
      std::uint64_t const limit = (std::uint64_t{1} << bits) - 1;
      std::vector<std::uint32_t> s(1000);
      for (auto& v : s) v = static_cast<std::uint32_t>(rng() & limit);
      auto buf = PackedBuffer::Compress(s, bits);
      for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(buf.ReadSymbol(i) == s[i]);
      for (std::size_t k = 0; k < 3000; ++k) {
        std::size_t i = rng() % s.size();
        REQUIRE(buf[i] == s[i]);
      }
      // memory bound: at most one word beyond the payload
      CHECK(buf.SizeBytes() * 8 <= s.size() * bits + 64);
      CHECK(buf.SizeBytes() * 8 >= s.size() * bits);
    }
  }

  TEST_CASE("overwriting a symbol leaves neighbours intact") {
    PackedBuffer buf(100, 7);
    for (std::size_t i = 0; i < 100; ++i) buf.Set(i, 127);
    buf.Set(9, 0);
    for (std::size_t i = 0; i < 100; ++i) CHECK(buf[i] == (i == 9 ? 0u : 127u));
  }

  TEST_CASE("ratio at 8 bits") {
    std::mt19937 rng(1);
    std::vector<std::uint32_t> s(10000);
    for (auto& v : s) v = rng() & 0xFF;
    auto buf = PackedBuffer::Compress(s, 8);
    CHECK(buf.SizeBytes() == 10000 + 8);
    double ratio = 40000.0 / static_cast<double>(buf.SizeBytes());
    CHECK(ratio >= 3.99);
  }

  TEST_CASE("from_words validates size") {
    auto buf = PackedBuffer::Compress(std::vector<std::uint32_t>{1, 2, 3}, 4);
    std::vector<PackedBuffer::Word> words(buf.Words().begin(), buf.Words().end());
    CHECK(PackedBuffer::FromWords(words, 3, 4) == buf);
    words.push_back(0);
    CHECK_THROWS_AS(PackedBuffer::FromWords(words, 3, 4), ContractError);
  }

  TEST_CASE("quantized matrix invariants and cache round trip") {
    auto data = hgbt::test::RandomMatrix(300, 6, 8, 0.15);
    auto cuts = std::make_shared<hgbt::CutMatrix const>(hgbt::BuildCuts(data, 255));
    auto q = hgbt::Quantize(data, cuts);
    CHECK(q.Buffer().Bits() == hgbt::SymbolBits(q.Sentinel()));
    CHECK(q.Buffer().Size() * q.Buffer().Bits() <= q.Buffer().SizeBytes() * 8);
    for (std::size_t i = 0; i < q.NumRows(); ++i) {
      for (std::size_t f = 0; f < q.NumFeatures(); ++f) CHECK(q.Symbol(i, f) <= q.Sentinel());
    }
    CHECK(q.CompressionRatio() > 3.9);

    hgbt::test::TempFile file(".bin");
    q.SaveCache(file.Path());
    std::string bytes = file.Read();
    CHECK(bytes.substr(0, 8) == "HGBTQMAT");
    auto back = hgbt::QuantizedMatrix::LoadCache(file.Path(), cuts);
    CHECK(back.Buffer() == q.Buffer());
    CHECK(back.NumRows() == q.NumRows());
    CHECK(back.Sentinel() == q.Sentinel());

    file.Write(bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS_AS(hgbt::QuantizedMatrix::LoadCache(file.Path(), cuts), hgbt::Error);
    file.Write("NOTMAGIC" + bytes.substr(8));
    CHECK_THROWS_AS(hgbt::QuantizedMatrix::LoadCache(file.Path(), cuts), hgbt::Error);
  }
}
