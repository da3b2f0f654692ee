#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "memlab/access.hpp"

namespace memlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A read hit a location that was never initialized and that has no
// pending write to forward from.
class MissingLocation : public Error {
 public:
  explicit MissingLocation(const LocationId& loc)
      : Error("location " + loc.name + " not initialized") {}
};

// The caller asked the machine to execute a queue position the current
// scheduling predicate does not permit.
class IllegalSchedule : public Error {
 public:
  explicit IllegalSchedule(std::size_t pos)
      : Error("queue position " + std::to_string(pos) +
              " is not executable under this model") {}
};

class UnknownProduct : public Error {
 public:
  explicit UnknownProduct(const std::string& name)
      : Error("unknown product " + name + " (known: SC, IBM370, TSO, PSO)") {}
};

}  // namespace memlab
