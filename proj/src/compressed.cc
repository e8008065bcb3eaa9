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

#include "hgbt/compressed.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "hgbt/quantile.h"

namespace hgbt {

unsigned SymbolBits(std::uint32_t max_value) {
  return std::max(1u, static_cast<unsigned>(std::bit_width(max_value)));
}

std::size_t PackedBuffer::NumWords(std::size_t n_symbols, unsigned bits) {
  return n_symbols * bits / kWordBits + 1;
}

PackedBuffer::PackedBuffer(std::size_t n_symbols, unsigned bits)
    : n_symbols_{n_symbols}, bits_{bits} {
  if (bits == 0 || bits > kMaxBits) {
    throw ContractError("bit width must be in [1, 32], got " + std::to_string(bits));
  }
  mask_ = (Word{1} << bits) - 1;
  words_.assign(NumWords(n_symbols, bits), 0);
}

PackedBuffer PackedBuffer::Compress(std::span<std::uint32_t const> symbols, unsigned bits) {
  PackedBuffer out(symbols.size(), bits);
  for (std::size_t i = 0; i < symbols.size(); ++i) out.Set(i, symbols[i]);
  return out;
}

PackedBuffer PackedBuffer::FromWords(std::vector<Word> words, std::size_t n_symbols,
                                     unsigned bits) {
  PackedBuffer out(0, bits);
  if (words.size() != NumWords(n_symbols, bits)) {
    throw ContractError("word count " + std::to_string(words.size()) + " does not match " +
                        std::to_string(n_symbols) + " symbols of " + std::to_string(bits) +
                        " bits");
  }
  out.words_ = std::move(words);
  out.n_symbols_ = n_symbols;
  return out;
}

void PackedBuffer::Set(std::size_t i, std::uint32_t symbol) {
  if (i >= n_symbols_) {
    throw ContractError("symbol index " + std::to_string(i) + " out of range " +
                        std::to_string(n_symbols_));
  }
  if (static_cast<Word>(symbol) > mask_) {
    throw ContractError("symbol " + std::to_string(symbol) + " does not fit in " +
                        std::to_string(bits_) + " bits");
  }
  std::size_t const bit = i * bits_;
  std::size_t const w = bit / kWordBits;
  unsigned const off = bit % kWordBits;
  Word const v = symbol;
  words_[w] = (words_[w] & ~(mask_ << off)) | (v << off);
  if (off + bits_ > kWordBits) {
    unsigned const spill = kWordBits - off;
    words_[w + 1] = (words_[w + 1] & ~(mask_ >> spill)) | (v >> spill);
  }
}

std::uint32_t PackedBuffer::ReadSymbol(std::size_t i) const {
  if (i >= n_symbols_) {
    throw ContractError("symbol index " + std::to_string(i) + " out of range " +
                        std::to_string(n_symbols_));
  }
  return (*this)[i];
}

QuantizedMatrix::QuantizedMatrix(PackedBuffer buffer, std::size_t n_rows, std::size_t n_features,
                                 std::uint32_t sentinel, std::shared_ptr<CutMatrix const> cuts)
    : buffer_{std::move(buffer)},
      n_rows_{n_rows},
      n_features_{n_features},
      sentinel_{sentinel},
      cuts_{std::move(cuts)} {
  if (buffer_.Size() != n_rows * n_features) {
    throw ContractError("packed buffer holds " + std::to_string(buffer_.Size()) +
                        " symbols, expected " + std::to_string(n_rows * n_features));
  }
  if (buffer_.Bits() != SymbolBits(sentinel)) {
    throw ContractError("bit width does not match sentinel");
  }
  if (cuts_ && cuts_->NumFeatures() != n_features) {
    throw ContractError("cut matrix feature count does not match");
  }
}

double QuantizedMatrix::CompressionRatio() const {
  double const dense = static_cast<double>(n_rows_ * n_features_) * 4.0;
  return dense / static_cast<double>(buffer_.SizeBytes());
}

namespace {

constexpr std::array<char, 8> kMagic{'H', 'G', 'B', 'T', 'Q', 'M', 'A', 'T'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void PutLE(std::ostream& os, T v) {
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF);
  }
  os.write(buf.data(), buf.size());
}

template <typename T>
T GetLE(std::istream& is, std::string const& path) {
  std::array<unsigned char, sizeof(T)> buf;
  if (!is.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    throw IoError("truncated quantized cache: " + path);
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

void QuantizedMatrix::SaveCache(std::string const& path) const {
  std::ofstream fo(path, std::ios::binary);
  if (!fo) throw IoError("cannot open file for writing: " + path);
  fo.write(kMagic.data(), kMagic.size());
  PutLE<std::uint32_t>(fo, kCacheVersion);
  PutLE<std::uint64_t>(fo, n_rows_);
  PutLE<std::uint64_t>(fo, n_features_);
  PutLE<std::uint32_t>(fo, buffer_.Bits());
  PutLE<std::uint32_t>(fo, sentinel_);
  PutLE<std::uint64_t>(fo, buffer_.Words().size());
  for (auto w : buffer_.Words()) PutLE<std::uint64_t>(fo, w);
  if (!fo) throw IoError("failed writing file: " + path);
}

QuantizedMatrix QuantizedMatrix::LoadCache(std::string const& path,
                                           std::shared_ptr<CutMatrix const> cuts) {
  std::ifstream fi(path, std::ios::binary);
  if (!fi) throw IoError("cannot open file: " + path);
  std::array<char, 8> magic{};
  if (!fi.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IoError("not a quantized matrix cache: " + path);
  }
  auto version = GetLE<std::uint32_t>(fi, path);
  if (version != kCacheVersion) {
    throw IoError("unsupported quantized cache version " + std::to_string(version));
  }
  auto n_rows = GetLE<std::uint64_t>(fi, path);
  auto n_features = GetLE<std::uint64_t>(fi, path);
  auto bits = GetLE<std::uint32_t>(fi, path);
  auto sentinel = GetLE<std::uint32_t>(fi, path);
  auto n_words = GetLE<std::uint64_t>(fi, path);
  if (bits == 0 || bits > PackedBuffer::kMaxBits ||
      n_words != (n_rows * n_features * bits + 63) / 64 + 1) {
    throw IoError("corrupt quantized cache header: " + path);
  }
  std::vector<PackedBuffer::Word> words(n_words);
  for (auto& w : words) w = GetLE<std::uint64_t>(fi, path);
  return QuantizedMatrix(PackedBuffer::FromWords(std::move(words), n_rows * n_features, bits),
                         n_rows, n_features, sentinel, std::move(cuts));
}

}  // namespace hgbt
