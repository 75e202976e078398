#pragma once

#include <stdexcept>
#include <string>

namespace ssp {

/// Malformed dimensions, missing holdings, broken tree structure.
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameter outside the domain an operation accepts.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Conditioning on a node that carries zero mass under the measure.
class ZeroMassError : public DomainError {
 public:
  explicit ZeroMassError(const std::string& what) : DomainError(what) {}
};

/// Pricing requested on a market that admits no equivalent supermartingale measure.
class NoEsmmError : public DomainError {
 public:
  explicit NoEsmmError(const std::string& what) : DomainError(what) {}
};

class NegativePayoffError : public DomainError {
 public:
  explicit NegativePayoffError(const std::string& what) : DomainError(what) {}
};

class InadmissibleStrategyError : public DomainError {
 public:
  explicit InadmissibleStrategyError(const std::string& what) : DomainError(what) {}
};

class NonpositiveNumeraireError : public DomainError {
 public:
  explicit NonpositiveNumeraireError(const std::string& what) : DomainError(what) {}
};

}  // namespace ssp
