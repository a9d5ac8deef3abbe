// Copyright 2026 The pathforest Authors
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

#include <stdexcept>
#include <string>

namespace opf {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on an object in the wrong state
/// (e.g. updating a heap entry that is not in the heap).
class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// Extraction from an empty heap.
class EmptyHeapError : public Error {
public:
    using Error::Error;
};

/// An argument value is out of its documented domain.
class ValueError : public Error {
public:
    using Error::Error;
};

/// A structure has fewer elements than the operation needs.
class TooSmallError : public Error {
public:
    using Error::Error;
};

/// Training data contains a single class where at least two are required.
class SingleClassError : public Error {
public:
    using Error::Error;
};

/// Vector or matrix dimensions do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// The metric is undefined for the given input (e.g. cosine on a zero vector).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

/// A class index expected in the ground truth never occurs there.
class DegenerateClassError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; the message carries the file, line or offset.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (missing file, short write, ...).
class IoError : public Error {
public:
    using Error::Error;
};

/// A serialized model carries an unsupported format version.
class VersionError : public Error {
public:
    using Error::Error;
};

} // namespace opf
