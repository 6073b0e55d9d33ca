// Copyright 2026 The proxyreg Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proxyreg {

// Base for every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller-supplied parameter is out of its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Cholesky met a pivot at or below the positive-definiteness threshold.
class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(std::size_t pivot, double value)
        : Error("matrix is not positive definite: pivot " + std::to_string(pivot) +
                " = " + std::to_string(value)),
          pivot_(pivot),
          value_(value) {}

    std::size_t pivot() const noexcept { return pivot_; }
    double value() const noexcept { return value_; }

private:
    std::size_t pivot_;
    double value_;
};

// X^T X is singular, so the unpenalized least-squares problem has no unique solution.
class SingularDesign : public Error {
public:
    using Error::Error;
};

class ZeroNormColumn : public Error {
public:
    explicit ZeroNormColumn(std::size_t column)
        : Error("zero-norm column " + std::to_string(column)), column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class DegenerateLabels : public Error {
public:
    using Error::Error;
};

class CsvError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace proxyreg
