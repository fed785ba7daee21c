#pragma once

#include <stdexcept>
#include <string>

namespace cbir {

// Input that is structurally valid but unusable for the requested operation
// (empty point set, zero-area image, histogram of length zero, ...).
class DegenerateInputError : public std::runtime_error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : std::runtime_error(what) {}
};

// A file could not be decoded into a raster.
class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// A catalog directory is missing, incomplete, or inconsistent.
class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cbir
