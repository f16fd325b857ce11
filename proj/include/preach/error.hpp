#pragma once

#include <stdexcept>
#include <string>

namespace preach {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed graph, workload or index file.
class ParseError : public Error {
public:
  using Error::Error;
};

// Raised by any DAG-only stage that finds a directed cycle.
class CycleError : public Error {
public:
  CycleError() : Error("graph contains a directed cycle") {}
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace preach
