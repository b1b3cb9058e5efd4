#include "swref/core.hpp"

namespace swref {

std::string_view to_string(FrictionFamily family) {
  switch (family) {
    case FrictionFamily::None: return "none";
    case FrictionFamily::Manning: return "manning";
    case FrictionFamily::DarcyWeisbach: return "darcy-weisbach";
    case FrictionFamily::Chezy: return "chezy";
  }
  return "?";
}

std::string_view to_string(FlowRegime regime) {
  switch (regime) {
    case FlowRegime::Subcritical: return "subcritical";
    case FlowRegime::Supercritical: return "supercritical";
    case FlowRegime::Critical: return "critical";
    case FlowRegime::Dry: return "dry";
  }
  return "?";
}

std::string_view to_string(SlopeClass slope) {
  switch (slope) {
    case SlopeClass::Mild: return "mild";
    case SlopeClass::Critical: return "critical";
    case SlopeClass::Steep: return "steep";
    case SlopeClass::Horizontal: return "horizontal";
    case SlopeClass::Adverse: return "adverse";
  }
  return "?";
}

char slope_letter(SlopeClass slope) {
  switch (slope) {
    case SlopeClass::Mild: return 'M';
    case SlopeClass::Critical: return 'C';
    case SlopeClass::Steep: return 'S';
    case SlopeClass::Horizontal: return 'H';
    case SlopeClass::Adverse: return 'A';
  }
  return '?';
}

}  // namespace swref
