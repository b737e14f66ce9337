#pragma once

#include <stdexcept>
#include <string>

namespace virn {

// Base class for every error this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// linear algebra kernels
class FactorizationFailed : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };
class NotPsd : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class NonFiniteValue : public Error { public: using Error::Error; };

// stream construction
class InvalidRho : public Error { public: using Error::Error; };
class DegenerateClassCount : public Error { public: using Error::Error; };
class EmptyClass : public Error { public: using Error::Error; };

// file formats
class BadMagic : public Error { public: using Error::Error; };
class VersionMismatch : public Error { public: using Error::Error; };
class TruncatedFile : public Error { public: using Error::Error; };
class LabelOutOfRange : public Error { public: using Error::Error; };

// estimation
class EmptyInput : public Error { public: using Error::Error; };
class DuplicateClass : public Error { public: using Error::Error; };

// variational autoencoder
class NonFiniteActivation : public Error { public: using Error::Error; };
class NonFiniteGradient : public Error { public: using Error::Error; };
class Divergence : public Error { public: using Error::Error; };

// neighbor refinement
class NegativeDistance : public Error { public: using Error::Error; };
class EmptyPool : public Error { public: using Error::Error; };

// classification and metrics
class EmptyRegistry : public Error { public: using Error::Error; };
class MissingTestSet : public Error { public: using Error::Error; };
class InsufficientHistory : public Error { public: using Error::Error; };

// configuration
class ConfigError : public Error { public: using Error::Error; };
class UnknownKey : public ConfigError { public: using ConfigError::ConfigError; };
class MissingWorld : public ConfigError { public: using ConfigError::ConfigError; };

}  // namespace virn
