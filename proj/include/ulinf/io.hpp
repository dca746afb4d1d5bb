#pragma once

#include "ulinf/ainf.hpp"
#include "ulinf/structures.hpp"
#include "ulinf/transfer.hpp"

#include <string>

namespace ulinf {

// Malformed JSON; the message carries line and column.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

enum class Convention { Shifted, UnshiftedAntisymmetric };

// Structure files:
//   {"convention": "shifted" | "unshifted-antisymmetric",   (optional, default shifted)
//    "basis": [{"name": "e1", "degree": 0}, ...],
//    "d":   [{"in": ["e1"], "out": "e2", "coeff": "1"}],
//    "ell": {"2": [{"in": ["e1", "e2"], "out": "e2", "coeff": "1/2"}]},
//    "q":   {"1": [{"in": ["e1"], "coeff": "1"}]}}
// Names refer to V. Entries may list inputs in any order; each (anti)symmetry orbit may be
// given at most once.
ULinfStructure load_structure(const std::string& text);
// Canonical form: shifted convention, sorted inputs, entries in table order.
std::string save_structure(const ULinfStructure& s);

// Retract files: {"big": {"basis": [...], "d": [...]}, "small": {...}, "f": M, "g": M, "h": M}
// with M either sparse [{"from": name, "to": name, "coeff": "..."}] or {"dense": rows},
// rows indexed by the target basis. "big"."d" may be omitted and taken from the structure.
struct RetractFile {
    RetractData data;
    bool has_big_d = false;
};
RetractFile load_retract(const std::string& text);

// A-infinity files: {"basis": [...], "gamma": {"2": [{"in": [...], "out": ..., "coeff": ...}]}}
// in the shifted convention (ordered inputs), or {"basis": [...], "product": [...]} for an
// ungraded associative algebra.
AInfStructure load_ainf(const std::string& text);
std::string save_ainf(const AInfStructure& s);
// Requires the "product" form; all degrees must be 0.
AssociativeAlgebra load_algebra(const std::string& text);
bool is_algebra_file(const std::string& text);

}  // namespace ulinf
