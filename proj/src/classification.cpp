#include "twoperiodic/classification.hpp"

#include <array>

namespace twoperiodic {

namespace {
constexpr std::array<std::string_view, 4> kKindNames = {
    "VanishEvenBlowOdd", "BlowEvenVanishOdd", "ExactTwoPeriodic", "ConvergesToTwoPeriodic"};
}

std::string_view kind_name(Kind k) noexcept { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<Kind> kind_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

double Classification::k_or_q() const {
  if (const auto* r1 = std::get_if<Rank1Data<double>>(&witness)) return r1->K;
  return std::get<Rank2Witness>(witness).Q;
}

double Classification::rho_or_delta() const {
  if (const auto* r1 = std::get_if<Rank1Data<double>>(&witness)) return r1->rho;
  return std::get<Rank2Witness>(witness).delta;
}

}  // namespace twoperiodic
