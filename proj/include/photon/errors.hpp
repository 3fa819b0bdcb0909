#pragma once

#include <stdexcept>
#include <string>

namespace photon {

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularGauge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroWavevector : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TransversalityViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PacketTouchesBoundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PacketTouchesSingularCone : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompatibleGauge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroIntensity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace photon
