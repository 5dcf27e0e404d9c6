#pragma once

#include <stdexcept>
#include <string>

namespace tsteer {

enum class Errc {
    NonZeroMean,
    UnsupportedOrder,
    LengthConditionViolated,
    NotASquare,
    StepTooLarge,
    InactiveTime,
    CflViolation,
    BlowupDetected,
    BudgetExceeded,
    TargetUnreachable,
    SigmaTooSmall,
    ParallelModes,
    SupportViolation,
    DependentAverages,
    ConfigError,
    IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tsteer
