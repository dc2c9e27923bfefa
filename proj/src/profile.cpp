#include <cmath>
#include <string>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"

namespace apb {

std::string_view to_string(Profile p) {
  return p == Profile::published ? "published" : "stated";
}

Profile parse_profile(std::string_view s) {
  if (s == "published") return Profile::published;
  if (s == "stated") return Profile::stated;
  throw DomainError(fmt::format("unknown profile '{}' (published|stated)", s));
}

const ProfileRules& rules(Profile p) {
  static const ProfileRules published{true, 1.0, false, true, 500.0};
  static const ProfileRules stated{false, 2.0, true, true, std::nullopt};
  return p == Profile::published ? published : stated;
}

double small_moduli_log_x0_min() { return std::log(1.05e7); }

}  // namespace apb
