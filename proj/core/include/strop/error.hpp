#pragma once

#include <stdexcept>
#include <string>

namespace strop {

// Root of every error the library raises. `kind()` is a stable tag used by
// the workbench when it reports failures in result documents.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define STROP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

STROP_DEFINE_ERROR(ParseError);
STROP_DEFINE_ERROR(InvalidArgument);
STROP_DEFINE_ERROR(IntegerRingNotSupported);
STROP_DEFINE_ERROR(CompositeNotZero);
STROP_DEFINE_ERROR(NonSimplicialInput);
STROP_DEFINE_ERROR(MismatchedComplex);
STROP_DEFINE_ERROR(NotOrientable);
STROP_DEFINE_ERROR(NotPure);
STROP_DEFINE_ERROR(InvalidAlgebra);
STROP_DEFINE_ERROR(WindowTooSmall);
STROP_DEFINE_ERROR(DegreeOutOfWindow);
STROP_DEFINE_ERROR(MismatchedWindow);
STROP_DEFINE_ERROR(InvalidCactus);
STROP_DEFINE_ERROR(ArityMismatch);
STROP_DEFINE_ERROR(OracleScaleExceeded);

#undef STROP_DEFINE_ERROR

}  // namespace strop
