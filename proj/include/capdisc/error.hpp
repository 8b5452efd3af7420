#pragma once

#include <stdexcept>
#include <string>

namespace capdisc {

// Base for every error raised by the library. The CLI maps SingularMatrix and
// RankError to the "numerical failure" exit code and everything else to
// "invalid configuration".
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class DegenerateCap : public Error {
 public:
  using Error::Error;
};

class MissingConvexityData : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class TooFew : public Error {
 public:
  using Error::Error;
};

}  // namespace capdisc
