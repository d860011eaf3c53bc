#pragma once

#include <stdexcept>
#include <string>

namespace heckeforge {

enum class Errc {
  UnsupportedType,
  InvalidFacet,
  MismatchedDatum,
  MismatchedAlgebra,
  InconsistentCharacter,
  InfiniteBasis,
  NotFinite,
  NotAChamber,
  DoesNotStabilize,
  NotSemisimpleDatum,
  PoincareVanishes,
  TruncationTooSmall,
  MarginExhausted,
  DimensionCap,
  UnknownExample,
  ConfigError,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnsupportedType: return "UnsupportedType";
    case Errc::InvalidFacet: return "InvalidFacet";
    case Errc::MismatchedDatum: return "MismatchedDatum";
    case Errc::MismatchedAlgebra: return "MismatchedAlgebra";
    case Errc::InconsistentCharacter: return "InconsistentCharacter";
    case Errc::InfiniteBasis: return "InfiniteBasis";
    case Errc::NotFinite: return "NotFinite";
    case Errc::NotAChamber: return "NotAChamber";
    case Errc::DoesNotStabilize: return "DoesNotStabilize";
    case Errc::NotSemisimpleDatum: return "NotSemisimpleDatum";
    case Errc::PoincareVanishes: return "PoincareVanishes";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
    case Errc::MarginExhausted: return "MarginExhausted";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::UnknownExample: return "UnknownExample";
    case Errc::ConfigError: return "ConfigError";
    case Errc::Internal: return "Internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace heckeforge
