#include "pdczeno/params.hpp"

#include <cmath>
#include <string>

#include "pdczeno/errors.hpp"

namespace pdczeno {

namespace {

void require_non_negative(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw InvalidParameter(std::string(name) + " must be finite");
  }
  if (value < 0.0) {
    throw InvalidParameter(std::string(name) + " must be non-negative");
  }
}

}  // namespace

void validate(const CouplerParams& params) {
  require_non_negative(params.gamma, "gamma");
  require_non_negative(params.kappa, "kappa");
  require_non_negative(params.length, "length");
  if (!std::isfinite(params.delta)) {
    throw InvalidParameter("delta must be finite");
  }
}

}  // namespace pdczeno
