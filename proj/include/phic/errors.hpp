// errors.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phic {

enum class ErrorKind {
  NotAnObject,
  InvalidArgument,
  InvalidLabel,
  IndexOverflow,
  DuplicateLabel,
  Syntax,
  UnresolvedAttribute,
  OpenTerm,
  UnsupportedVariant,
  UnsupportedConstruct,
};

const char* to_string(ErrorKind kind);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// 1-based source position.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// An error tied to a location in concrete syntax (parse and desugar errors).
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, SourcePos pos, const std::string& message);

  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

}  // namespace phic
