#pragma once

#include <stdexcept>
#include <string>

namespace polaron {

enum class ErrorCode {
  NonInvertible,
  BadFactor,
  DimMismatch,
  SingularCoupling,
  SingularBoundary,
  SingularInverse,
  PoleHit,
  NearRoot,
  IllConditioned,
  MixedSector,
  TrackingLost,
  NoConvergence,
  SingularJacobian,
  RankDeficient,
  ConfigError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::BadFactor: return "BadFactor";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::SingularCoupling: return "SingularCoupling";
    case ErrorCode::SingularBoundary: return "SingularBoundary";
    case ErrorCode::SingularInverse: return "SingularInverse";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NearRoot: return "NearRoot";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::MixedSector: return "MixedSector";
    case ErrorCode::TrackingLost: return "TrackingLost";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polaron
