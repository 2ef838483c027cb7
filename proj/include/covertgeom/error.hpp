/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace covertgeom {

enum class ErrorKind { Domain, InvalidArgument, Unsupported, Numerical };

/// Single exception type for the library. `field` names the offending
/// parameter when one is identifiable, otherwise it is empty.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string field, const std::string& what)
      : std::runtime_error(what), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& field,
                              const std::string& what) {
  throw Error(kind, field, what);
}

inline void require(bool ok, const char* field, const std::string& what,
                    ErrorKind kind = ErrorKind::InvalidArgument) {
  if (!ok) throw Error(kind, field, what);
}

}  // namespace covertgeom
