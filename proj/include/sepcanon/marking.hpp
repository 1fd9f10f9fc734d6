#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sepcanon/azimuths.hpp"
#include "sepcanon/error.hpp"

namespace sepcanon {

struct MarkedUnimark {
  std::string point;
  bool co_hyperelliptic = false;
  int multiplicity = 3;
  std::string source;  ///< *-sep id the mark comes from; empty when inherited
  std::string vertex;  ///< only needed for points the component graph does not know
};

struct MarkedBimark {
  std::array<std::string, 2> points;
  bool co_hyperelliptic = false;
  std::optional<Azimuth> azimuth;
  std::string source;
  std::array<std::string, 2> vertices;

  std::string key() const { return points[0] + "|" + points[1]; }
};

/// Unimarks carry multiplicity 2 exactly when co-hyperelliptic; bimarks carry
/// a regular azimuth exactly when co-hyperelliptic.
struct AzimuthalMarking {
  std::vector<MarkedUnimark> unimarks;
  std::vector<MarkedBimark> bimarks;

  void validate() const {
    for (const auto& u : unimarks) {
      if (u.multiplicity != (u.co_hyperelliptic ? 2 : 3)) {
        fail(Errc::malformed_input, "unimark " + u.point + " has multiplicity " + std::to_string(u.multiplicity));
      }
    }
    for (const auto& b : bimarks) {
      if (b.points[0] == b.points[1]) fail(Errc::malformed_input, "bimark " + b.key() + " repeats a point");
      if (b.co_hyperelliptic != b.azimuth.has_value()) {
        fail(Errc::malformed_input, "bimark " + b.key() + " must carry an azimuth iff co-hyperelliptic");
      }
      if (b.azimuth && !b.azimuth->is_regular()) {
        fail(Errc::non_regular, "bimark " + b.key() + " has singular azimuth " + b.azimuth->to_string());
      }
    }
  }
};

}  // namespace sepcanon
