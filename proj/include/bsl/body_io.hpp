#pragma once

#include <string>

#include "bsl/bodies.hpp"

namespace bsl {

// JSON wire format for body specifications:
//   {"kind":"rhombus","a":[2,1]}
//   {"kind":"box","a":[1,1,1]}
//   {"kind":"ellipsoid","a":[4,1,1]}
//   {"kind":"hpolytope","normals":[[0.6,0.8],...],"offsets":[1,...],
//    "vertices":[[...],...]}            (vertices optional)
//   {"kind":"linear_image","base":{...},"matrix":[[1,0],[0,1]]}
// Unknown keys are rejected; every failure is a ParseError naming the
// offending key, including geometric validation failures of the payload.
BodySpec parse_body_json(const std::string& text);
BodySpec load_body_file(const std::string& path);

// Canonical compact encoding; parse_body_json(body_to_json(s)) round-trips
// byte-identically (shortest round-trip float formatting).
std::string body_to_json(const BodySpec& spec);

}  // namespace bsl
