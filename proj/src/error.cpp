#include "graphpencil/error.hpp"

namespace graphpencil {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Gluing: return "gluing";
    case ErrorKind::MissingGlyph: return "missing-glyph";
    case ErrorKind::Degeneracy: return "degeneracy";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace graphpencil
