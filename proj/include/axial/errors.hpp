#pragma once

#include <stdexcept>
#include <string>

namespace axial {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed model, out-of-range parameter, empty language.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class EmptyLanguage : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A configured work cap would be exceeded. Never silently truncated.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace axial
