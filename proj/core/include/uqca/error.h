// Copyright 2026 The uqca Authors
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

#ifndef UQCA_ERROR_H_
#define UQCA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace uqca {

// Base of every error raised by the library. `kind()` is a stable,
// machine-parsable class name used by the CLI error line.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string &message);
  const std::string &kind() const { return kind_; }

 private:
  std::string kind_;
};

#define UQCA_DECLARE_ERROR(Name, kind_name)                               \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string &message) : Error(kind_name, message) {} \
  }

UQCA_DECLARE_ERROR(ParseError, "parse");
UQCA_DECLARE_ERROR(ParityError, "parity");
UQCA_DECLARE_ERROR(ConstructionError, "construction");
UQCA_DECLARE_ERROR(IntegrityError, "integrity");
UQCA_DECLARE_ERROR(ResourceError, "resource");
UQCA_DECLARE_ERROR(RoutingError, "routing");
UQCA_DECLARE_ERROR(LayoutError, "layout");
UQCA_DECLARE_ERROR(LeakageError, "leakage");
UQCA_DECLARE_ERROR(VerificationError, "verification");
UQCA_DECLARE_ERROR(RangeError, "range");

#undef UQCA_DECLARE_ERROR

}  // namespace uqca

#endif  // UQCA_ERROR_H_
