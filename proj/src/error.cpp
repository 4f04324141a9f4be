#include "qsandor/error.hpp"

namespace qsandor {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DomainError: return "DomainError";
    case Errc::SupExceeded: return "SupExceeded";
    case Errc::NonPositiveFactor: return "NonPositiveFactor";
    case Errc::TermCapExceeded: return "TermCapExceeded";
    case Errc::QTooCloseToOne: return "QTooCloseToOne";
    case Errc::SpecError: return "SpecError";
  }
  return "UnknownError";
}

}  // namespace qsandor
