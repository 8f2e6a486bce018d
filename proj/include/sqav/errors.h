// Copyright 2026 The SQAV Authors
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

#ifndef SQAV_ERRORS_H
#define SQAV_ERRORS_H

#include <stdexcept>
#include <string>

namespace sqav {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad dimension, particle index, or mismatched (n, m) between operands.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A sequence expected to have distinct entries contains a repeat.
class PermutationError : public Error {
   public:
    using Error::Error;
};

/// A state or matrix would exceed the configured term budget.
class ResourceError : public Error {
   public:
    using Error::Error;
};

/// A value violates a documented precondition (range, normalization, unitarity).
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// A protocol step was invoked out of order.
class SequencingError : public Error {
   public:
    using Error::Error;
};

/// Malformed scenario or configuration input.
class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace sqav

#endif
