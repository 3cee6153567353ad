#pragma once

#include <stdexcept>
#include <string>

namespace pathauction {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Two ranks a mechanism depends on have equal cost (or two bidders tie for
/// the win). Mechanisms refuse to break such ties.
class TieError : public Error {
 public:
  using Error::Error;
};

class DisconnectedError : public Error {
 public:
  using Error::Error;
};

/// Brute-force path enumeration refused an oversized graph.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

class InsufficientPathsError : public Error {
 public:
  using Error::Error;
};

class EmptyGroupError : public Error {
 public:
  using Error::Error;
};

class NonpositiveProfitError : public Error {
 public:
  using Error::Error;
};

class NotSelectedError : public Error {
 public:
  using Error::Error;
};

/// Bid-profile product space exceeds the enumeration guard.
class GridTooLargeError : public Error {
 public:
  using Error::Error;
};

class GenerationFailedError : public Error {
 public:
  using Error::Error;
};

class InadmissibleInstanceError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace pathauction
