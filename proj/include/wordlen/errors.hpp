#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordlen {

// Base for every data-level failure. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyText : public Error {
 public:
  EmptyText() : Error("text contains no word tokens") {}
};

class DegenerateSpectrum : public Error {
 public:
  DegenerateSpectrum()
      : Error("rank spectrum has a single frequency block; lambda1 is not identifiable") {}
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& origin, std::size_t line, const std::string& what)
      : Error(origin + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public Error {
 public:
  using Error::Error;
};

class UnknownLanguage : public Error {
 public:
  using Error::Error;
};

class EmptyTable : public Error {
 public:
  using Error::Error;
};

class EmptyResults : public Error {
 public:
  using Error::Error;
};

class UnknownGroup : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wordlen
