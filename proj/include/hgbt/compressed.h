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

/*!
 * \file compressed.h
 * \brief bit-packed storage for the quantized feature matrix
 *
 * Layout: symbol i occupies bits [i*b, (i+1)*b) of a stream of 64-bit words,
 * where bit k of the stream is bit (k % 64) of word (k / 64), least significant
 * bit first. A symbol may straddle two words. The stream holds
 * floor(n*b / 64) + 1 words, so it never exceeds n*b + 64 bits.
 * On disk the words are written little-endian, so the byte stream is identical
 * on every platform.
 */
#ifndef HGBT_COMPRESSED_H_
#define HGBT_COMPRESSED_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hgbt/base.h"

namespace hgbt {

class CutMatrix;

/*! \brief fewest bits that can hold every symbol in [0, max_value]; at least 1 */
unsigned SymbolBits(std::uint32_t max_value);

class PackedBuffer {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;
  static constexpr unsigned kMaxBits = 32;

  PackedBuffer() = default;
  /*! \brief zero-filled buffer of n symbols of `bits` width */
  PackedBuffer(std::size_t n_symbols, unsigned bits);

  /*! \brief pack symbols; throws ContractError if any symbol needs more than `bits` */
  static PackedBuffer Compress(std::span<std::uint32_t const> symbols, unsigned bits);
  /*! \brief adopt a raw word stream, e.g. read back from a cache file */
  static PackedBuffer FromWords(std::vector<Word> words, std::size_t n_symbols, unsigned bits);

  /*! \brief single-writer store; checked */
  void Set(std::size_t i, std::uint32_t symbol);

  /*! \brief checked read; throws ContractError when i >= Size() */
  std::uint32_t ReadSymbol(std::size_t i) const;

  /*! \brief unchecked read for hot loops */
  std::uint32_t operator[](std::size_t i) const noexcept {
    std::size_t const bit = i * bits_;
    std::size_t const w = bit / kWordBits;
    unsigned const off = bit % kWordBits;
    Word v = words_[w] >> off;
    if (off + bits_ > kWordBits) v |= words_[w + 1] << (kWordBits - off);
    return static_cast<std::uint32_t>(v & mask_);
  }

  std::size_t Size() const { return n_symbols_; }
  unsigned Bits() const { return bits_; }
  std::size_t SizeBytes() const { return words_.size() * sizeof(Word); }
  std::span<Word const> Words() const { return words_; }

  friend bool operator==(PackedBuffer const&, PackedBuffer const&) = default;

 private:
  static std::size_t NumWords(std::size_t n_symbols, unsigned bits);

  std::vector<Word> words_{0};
  std::size_t n_symbols_{0};
  unsigned bits_{1};
  Word mask_{1};
};

/*!
 * \brief dense row-major matrix of local bin indices, bit-packed.
 *
 * Column position identifies the feature; a missing cell stores the sentinel,
 * which equals the cut matrix's max_bins and is the largest symbol.
 */
class QuantizedMatrix {
 public:
  QuantizedMatrix() = default;
  QuantizedMatrix(PackedBuffer buffer, std::size_t n_rows, std::size_t n_features,
                  std::uint32_t sentinel, std::shared_ptr<CutMatrix const> cuts);

  std::uint32_t Symbol(std::size_t row, std::size_t feature) const {
    return buffer_[row * n_features_ + feature];
  }
  bool IsMissing(std::uint32_t symbol) const { return symbol == sentinel_; }

  std::size_t NumRows() const { return n_rows_; }
  std::size_t NumFeatures() const { return n_features_; }
  std::uint32_t Sentinel() const { return sentinel_; }
  PackedBuffer const& Buffer() const { return buffer_; }
  CutMatrix const& Cuts() const { return *cuts_; }
  std::shared_ptr<CutMatrix const> CutsPtr() const { return cuts_; }

  /*! \brief bytes of 32-bit dense storage divided by packed bytes */
  double CompressionRatio() const;

  /*!
   * \brief binary cache: "HGBTQMAT" magic, u32 version, u64 n_rows, u64 n_features,
   *  u32 bits, u32 sentinel, u64 word count, then the words, all little-endian.
   */
  void SaveCache(std::string const& path) const;
  static QuantizedMatrix LoadCache(std::string const& path, std::shared_ptr<CutMatrix const> cuts);

 private:
  PackedBuffer buffer_;
  std::size_t n_rows_{0};
  std::size_t n_features_{0};
  std::uint32_t sentinel_{0};
  std::shared_ptr<CutMatrix const> cuts_;
};

}  // namespace hgbt

#endif  // HGBT_COMPRESSED_H_
