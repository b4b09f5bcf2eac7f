#include "thiele/errors.hpp"

#include <sstream>

namespace thiele {

BreakdownError::BreakdownError(std::size_t step)
    : Error("denominator of zero was produced; try perturbing the data points "
            "(inverse difference level " + std::to_string(step) + ")"),
      step_(step) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string duplicate_message(double x, std::size_t line) {
  std::ostringstream os;
  os.precision(17);
  os << "line " << line << ": duplicate abscissa x = " << x;
  return os.str();
}

}  // namespace

DuplicateAbscissa::DuplicateAbscissa(double x, std::size_t line)
    : Error(duplicate_message(x, line)), x_(x), line_(line) {}

NonFiniteValue::NonFiniteValue(std::size_t line)
    : Error("line " + std::to_string(line) + ": non-finite value"), line_(line) {}

VersionMismatch::VersionMismatch(long long found)
    : Error("unsupported model format_version " + std::to_string(found) + " (expected 1)") {}

}  // namespace thiele
