#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsandor {

enum class Errc {
  DomainError,
  SupExceeded,
  NonPositiveFactor,
  TermCapExceeded,
  QTooCloseToOne,
  SpecError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above; the CLI
// prints name() verbatim.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  Errc code_;
};

}  // namespace qsandor
