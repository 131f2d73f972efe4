#pragma once

#include "rotalg/algebra.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace rotalg::io {

using Json = nlohmann::ordered_json;

// Serialization layout:
//   torus function  {"coeffs": [{"k": int, "re": float, "im": float}, ...]}   (sorted by k)
//   element         {"theta": float, "sigma": float,
//                    "terms": [{"n": int, "fn": <torus function>}, ...],       (sorted by n)
//                    "meta": {"irrational": bool, "convergents": [[p, q], ...]}}

Json to_json(const TorusFunction& fn);
Json to_json(const AlgebraElement& element);

TorusFunction torus_from_json(const nlohmann::json& j);
AlgebraElement element_from_json(const nlohmann::json& j);

// Deterministic text form: two-space indent, LF newlines, floats printed with
// 17 significant digits (round-trip exact). Identical values serialize to
// identical bytes on every platform.
std::string canonical_dump(const Json& j);

// Parse with errors rephrased as ParseError, carrying the source name.
nlohmann::json parse_text(const std::string& text, const std::string& source);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

TorusFunction torus_from_file(const std::string& path);
AlgebraElement element_from_file(const std::string& path);

} // namespace rotalg::io
