// Copyright 2026 The adalloc Authors.
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

#ifndef ADALLOC_ERROR_HPP_
#define ADALLOC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace adalloc {

enum class ErrorKind {
  kIo,
  kParse,
  kValidation,
  kLimit,       // instance exceeds an exhaustive-enumeration bound
  kSolverAbort,
  kInternal,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure raised by the library carries a kind so the C API and the
// CLI can map it onto status codes and exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace adalloc

#endif  // ADALLOC_ERROR_HPP_
