#pragma once

#include <stdexcept>
#include <string>

namespace tnv {

// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// symbolic core
class DivisionByZero : public Error { public: using Error::Error; };
class CanonicalizationMismatch : public Error { public: using Error::Error; };
class InconsistentBinding : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class DerivativeOrderError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };

// forms
class DegreeError : public Error { public: using Error::Error; };
class BasisMismatch : public Error { public: using Error::Error; };
class SingularCoframe : public Error { public: using Error::Error; };
class SingularMetric : public Error { public: using Error::Error; };

// models, reduction and charges
class ParameterDomain : public Error { public: using Error::Error; };
class UnknownCase : public Error { public: using Error::Error; };
class GaugeNotApplied : public Error { public: using Error::Error; };
class NotKilling : public Error { public: using Error::Error; };
class NotTimelikeRegion : public Error { public: using Error::Error; };
class Divergent : public Error { public: using Error::Error; };

// command line
class UnknownSuite : public Error { public: using Error::Error; };
class BadParams : public Error { public: using Error::Error; };

}  // namespace tnv
