#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sepcanon {

enum class Errc {
  malformed_input,
  unknown_id,
  disconnected,
  unstable,
  genus_too_low,
  not_two_inseparable,
  separable,
  not_a_bisep,
  not_a_polyseparator,
  invalid_theta,
  incomplete_oracle,
  invalid_oracle,
  incompatible_singular,
  under_determined,
  both_singular,
  inconsistent_singular,
  incompatible_triple,
  non_regular,
  mark_off_component,
  degenerate_system,
  invariant_violation,
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::malformed_input: return "MalformedInput";
    case Errc::unknown_id: return "UnknownId";
    case Errc::disconnected: return "Disconnected";
    case Errc::unstable: return "Unstable";
    case Errc::genus_too_low: return "GenusTooLow";
    case Errc::not_two_inseparable: return "NotTwoInseparable";
    case Errc::separable: return "Separable";
    case Errc::not_a_bisep: return "NotABisep";
    case Errc::not_a_polyseparator: return "NotAPolyseparator";
    case Errc::invalid_theta: return "InvalidTheta";
    case Errc::incomplete_oracle: return "IncompleteOracle";
    case Errc::invalid_oracle: return "InvalidOracle";
    case Errc::incompatible_singular: return "IncompatibleSingular";
    case Errc::under_determined: return "UnderDetermined";
    case Errc::both_singular: return "BothSingular";
    case Errc::inconsistent_singular: return "InconsistentSingular";
    case Errc::incompatible_triple: return "IncompatibleTriple";
    case Errc::non_regular: return "NonRegular";
    case Errc::mark_off_component: return "MarkOffComponent";
    case Errc::degenerate_system: return "DegenerateSystem";
    case Errc::invariant_violation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised before classification when moduli facts the analysis needs are absent.
class IncompleteOracle : public Error {
 public:
  explicit IncompleteOracle(std::vector<std::string> missing)
      : Error(Errc::incomplete_oracle, join(missing)), missing_(std::move(missing)) {}

  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  static std::string join(const std::vector<std::string>& keys) {
    std::string out = "missing keys:";
    for (const auto& k : keys) out += " " + k;
    return out;
  }

  std::vector<std::string> missing_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// Runtime check of an internal invariant.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(Errc::invariant_violation, what);
}

}  // namespace sepcanon
