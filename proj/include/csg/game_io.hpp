#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "csg/core_model.hpp"

namespace csg {

/// `csg n=<n> t=<t> r=<r>; nvec=[n1,...]; M=[[...],[...]]`
std::string to_text(const TypedGame& game);
/// Strict inverse of to_text; the n, t and r headers must agree with the body.
TypedGame game_from_text(std::string_view text);

/// {"M": [[...]], "n": n, "nvec": [...]}
nlohmann::json to_json(const TypedGame& game);
TypedGame game_from_json(const nlohmann::json& j);

}  // namespace csg
