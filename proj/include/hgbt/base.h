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
 * \file base.h
 * \brief error types and small value types shared by every module
 */
#ifndef HGBT_BASE_H_
#define HGBT_BASE_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hgbt {

/*! \brief node index inside a tree; -1 means "no node" */
using bst_node_t = std::int32_t;
/*! \brief feature (column) index */
using bst_feature_t = std::uint32_t;
/*! \brief local bin index or quantized symbol */
using bst_bin_t = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*! \brief unreadable / unwritable file */
class IoError : public Error {
 public:
  using Error::Error;
};

/*! \brief malformed text input; line and column are 1-based, 0 when unknown */
class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column)
      : Error(what), line_{line}, column_{column} {}
  std::size_t Line() const { return line_; }
  std::size_t Column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/*! \brief caller broke a documented precondition (bad index, size mismatch, overflow) */
class ContractError : public Error {
 public:
  using Error::Error;
};

/*! \brief data or configuration rejected before training (label domain, parameter bounds) */
class ValidationError : public Error {
 public:
  using Error::Error;
};

/*! \brief model file does not match the expected schema or version */
class SchemaError : public Error {
 public:
  using Error::Error;
};

/*! \brief first and second order gradient of the loss for one instance */
struct GradientPair {
  double grad{0.0};
  double hess{0.0};

  GradientPair() = default;
  GradientPair(double g, double h) : grad{g}, hess{h} {}

  GradientPair& operator+=(GradientPair const& rhs) {
    grad += rhs.grad;
    hess += rhs.hess;
    return *this;
  }
  friend GradientPair operator+(GradientPair lhs, GradientPair const& rhs) { return lhs += rhs; }
  friend GradientPair operator-(GradientPair const& lhs, GradientPair const& rhs) {
    return {lhs.grad - rhs.grad, lhs.hess - rhs.hess};
  }
  friend bool operator==(GradientPair const&, GradientPair const&) = default;
};

}  // namespace hgbt

#endif  // HGBT_BASE_H_
