#include "gammalg/error.hpp"

namespace gammalg {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::EmptyShift: return "EmptyShift";
    case ErrorKind::WrongPresentation: return "WrongPresentation";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::NotAnArrow: return "NotAnArrow";
    case ErrorKind::NotUnitModulus: return "NotUnitModulus";
    case ErrorKind::NotCoreElement: return "NotCoreElement";
    case ErrorKind::LevelTooLow: return "LevelTooLow";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::BasisOverflow: return "BasisOverflow";
    case ErrorKind::ClassExplosion: return "ClassExplosion";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace gammalg
