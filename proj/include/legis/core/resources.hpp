#pragma once

#include "legis/core/error.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace legis {

/// Shipped data files (lexicons, prompt templates, guardrail patterns),
/// compiled in from data/. Names are paths relative to data/, e.g.
/// "lexicons/it/pronouns.txt".
std::optional<std::string_view> find_resource(std::string_view name) noexcept;
std::string_view resource(std::string_view name);

} // namespace legis
