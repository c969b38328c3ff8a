// errors.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/errors.hpp"

namespace phic {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAnObject: return "not-an-object";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidLabel: return "invalid-label";
    case ErrorKind::IndexOverflow: return "index-overflow";
    case ErrorKind::DuplicateLabel: return "duplicate-label";
    case ErrorKind::Syntax: return "syntax-error";
    case ErrorKind::UnresolvedAttribute: return "unresolved-attribute";
    case ErrorKind::OpenTerm: return "open-term";
    case ErrorKind::UnsupportedVariant: return "unsupported-variant";
    case ErrorKind::UnsupportedConstruct: return "unsupported-construct";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

SourceError::SourceError(ErrorKind kind, SourcePos pos, const std::string& message)
    : Error(kind, std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      detail_(message) {}

}  // namespace phic
