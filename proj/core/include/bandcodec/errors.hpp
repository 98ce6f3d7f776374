// Copyright 2026 The bandcodec Authors
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

#ifndef BANDCODEC_ERRORS_HPP
#define BANDCODEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bandcodec {

/// Base class for all bandcodec errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (bad sizes, out-of-range values, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// File contents are in an unrecognized or unsupported format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File contents are recognized but truncated or internally inconsistent.
class CorruptError : public Error {
 public:
  using Error::Error;
};

/// Operating-system level I/O failure (open, read, write, rename).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A numeric operation cannot produce a meaningful result.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Value cannot be represented in the requested on-disk encoding.
class SerializeError : public Error {
 public:
  using Error::Error;
};

/// Training diverged or cannot proceed.
class TrainError : public Error {
 public:
  using Error::Error;
};

}  // namespace bandcodec

#endif  // BANDCODEC_ERRORS_HPP
