#ifndef PGG_ERROR_HPP
#define PGG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pgg {

// Base class for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (presentations, input files, checkpoints).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// A structural precondition of an algorithm does not hold.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(what) {}
};

class OrbitCapExceeded : public Error {
 public:
  OrbitCapExceeded(const std::string& node, unsigned long long count, unsigned long long cap)
      : Error("orbit cap exceeded at node " + node + ": " + std::to_string(count) +
              " allowable subgroups > cap " + std::to_string(cap)),
        node_(node) {}
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

}  // namespace pgg

#endif  // PGG_ERROR_HPP
