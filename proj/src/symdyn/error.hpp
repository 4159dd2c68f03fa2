#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

enum class ErrorKind {
  parse,        // malformed input text
  validation,   // well-formed input violating a structural invariant
  unsupported,  // presentation outside what an operation can decide
  domain,       // argument outside an operation's domain (e.g. T on (∅;J))
  parameter,    // bad numeric parameter (bounds, levels, depths)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace symdyn
