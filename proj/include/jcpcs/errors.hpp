// Copyright 2026 The jcpcs Authors
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

namespace jcpcs {

// Base of every error raised by the library. The CLI maps these onto
// nonzero exit codes via code().
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int code = 1)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

#define JCPCS_DEFINE_ERROR(Name, Code)                             \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what)                          \
        : Error(#Name ": " + what, Code) {}                         \
  };

JCPCS_DEFINE_ERROR(InvalidArgument, 2)
JCPCS_DEFINE_ERROR(DegenerateCoupling, 3)
JCPCS_DEFINE_ERROR(SingularSystem, 4)
JCPCS_DEFINE_ERROR(NonConvergent, 5)
JCPCS_DEFINE_ERROR(StepSizeTooLarge, 6)
JCPCS_DEFINE_ERROR(EmptySupport, 7)
JCPCS_DEFINE_ERROR(NoInteriorPeak, 8)
JCPCS_DEFINE_ERROR(UnknownPreset, 9)
JCPCS_DEFINE_ERROR(FormulaDomain, 10)
JCPCS_DEFINE_ERROR(UnknownKey, 11)
JCPCS_DEFINE_ERROR(TypeMismatch, 12)
JCPCS_DEFINE_ERROR(MissingRequired, 13)
JCPCS_DEFINE_ERROR(IoError, 14)

#undef JCPCS_DEFINE_ERROR

}  // namespace jcpcs
