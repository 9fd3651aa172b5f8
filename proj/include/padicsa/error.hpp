#pragma once

#include <stdexcept>
#include <string>

namespace padicsa {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Stable machine-readable tag, used by the CLI diagnostics.
  virtual const char* kind() const noexcept { return "Error"; }
};

#define PADICSA_ERROR(Name, Base)                                   \
  class Name : public Base {                                        \
   public:                                                          \
    using Base::Base;                                               \
    const char* kind() const noexcept override { return #Name; }    \
  };

// Tracked digits do not determine the answer.
PADICSA_ERROR(InsufficientPrecision, Error)
PADICSA_ERROR(DomainError, Error)
PADICSA_ERROR(UnsupportedTorsion, Error)
// A polynomial does not split into linear factors over Q_p.
PADICSA_ERROR(UnsupportedSplitting, Error)
PADICSA_ERROR(RootExtractionError, Error)
PADICSA_ERROR(ArityError, Error)
PADICSA_ERROR(EmptyCell, Error)
PADICSA_ERROR(TypeZeroCell, Error)
PADICSA_ERROR(Unbounded, Error)
PADICSA_ERROR(EmptySet, Error)
PADICSA_ERROR(VanishingFunction, Error)
PADICSA_ERROR(UnboundedDomain, Error)
PADICSA_ERROR(SizeCap, Error)

#undef PADICSA_ERROR

/// Parse failure with the byte offset where it was detected.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  const char* kind() const noexcept override { return "SyntaxError"; }
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

/// True for the errors the CLI maps to exit status 2.
inline bool is_unsupported_or_precision(const Error& e) {
  const std::string k = e.kind();
  return k == "InsufficientPrecision" || k == "UnsupportedSplitting" ||
         k == "UnsupportedTorsion" || k == "RootExtractionError";
}

}  // namespace padicsa
