#include "desal/schedule.hpp"

#include <cctype>
#include "desal/domain.hpp"

namespace desal {

FlexibilityMode parse_mode(const std::string& name) {
  std::string low;
  for (char c : name) low.push_back(static_cast<char>(std::tolower(c)));
  if (low == "nomix") return FlexibilityMode::NoMix;
  if (low == "mixini") return FlexibilityMode::MixIni;
  if (low == "mixflex") return FlexibilityMode::MixFlex;
  if (low == "mixflexini") return FlexibilityMode::MixFlexIni;
  throw ConfigError("unknown flexibility mode '" + name +
                    "' (expected nomix, mixini, mixflex, or mixflexini)");
}

std::string mode_name(FlexibilityMode mode) {
  switch (mode) {
    case FlexibilityMode::NoMix: return "nomix";
    case FlexibilityMode::MixIni: return "mixini";
    case FlexibilityMode::MixFlex: return "mixflex";
    case FlexibilityMode::MixFlexIni: return "mixflexini";
  }
  throw ConfigError("unknown flexibility mode enum value");
}

bool mode_mixing(FlexibilityMode mode) {
  return mode != FlexibilityMode::NoMix;
}

bool mode_end_closure(FlexibilityMode mode) {
  return mode == FlexibilityMode::MixIni || mode == FlexibilityMode::MixFlexIni;
}

}  // namespace desal
