#pragma once

#include <stdexcept>
#include <string>

namespace fenchel {

/// Base of every domain error raised by the library. `name()` is the stable
/// identifier reported by the command line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define FENCHEL_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                             \
   public:                                                                \
    explicit Type(const std::string& what) : Error(#Type, what) {}        \
  };

FENCHEL_DEFINE_ERROR(DimensionError)
FENCHEL_DEFINE_ERROR(ImproperFunctionError)
FENCHEL_DEFINE_ERROR(EnvelopeImproperError)
FENCHEL_DEFINE_ERROR(EmptyDomainError)
FENCHEL_DEFINE_ERROR(DomainError)
FENCHEL_DEFINE_ERROR(NotEpsSubgradientError)
FENCHEL_DEFINE_ERROR(UnboundedError)
FENCHEL_DEFINE_ERROR(InvalidOracleError)
FENCHEL_DEFINE_ERROR(ScopeError)
FENCHEL_DEFINE_ERROR(HypothesisError)

#undef FENCHEL_DEFINE_ERROR

}  // namespace fenchel
