#include "tsteer/errors.hpp"

namespace tsteer {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonZeroMean: return "NonZeroMean";
        case Errc::UnsupportedOrder: return "UnsupportedOrder";
        case Errc::LengthConditionViolated: return "LengthConditionViolated";
        case Errc::NotASquare: return "NotASquare";
        case Errc::StepTooLarge: return "StepTooLarge";
        case Errc::InactiveTime: return "InactiveTime";
        case Errc::CflViolation: return "CflViolation";
        case Errc::BlowupDetected: return "BlowupDetected";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::TargetUnreachable: return "TargetUnreachable";
        case Errc::SigmaTooSmall: return "SigmaTooSmall";
        case Errc::ParallelModes: return "ParallelModes";
        case Errc::SupportViolation: return "SupportViolation";
        case Errc::DependentAverages: return "DependentAverages";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace tsteer
