#pragma once

#include <string>
#include <string_view>

#include "rumkit/framework.hpp"

namespace rumkit {

/// Framework file format: UTF-8 JSON object with `dimension`, optional
/// `radicand` (default 0), `periods` (rank <= dimension row vectors of
/// scalar literals), `vertices`, and `edges` ({kappa, tau, delta} with
/// 1-based indices). Scalar literal grammar: `R` or `R+R*sqrt(D)`,
/// R = [-]int[/int], whitespace-free.
CrystalFramework parse_framework(std::string_view text);
std::string serialize_framework(const CrystalFramework& fw);

} // namespace rumkit
