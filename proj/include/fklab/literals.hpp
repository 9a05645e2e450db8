#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fklab/characters.hpp"
#include "fklab/field.hpp"
#include "fklab/folner.hpp"

namespace fklab {

/// "Q", "F_5", "F_2^4", "F_3(t)"
FieldDescriptor parse_field(std::string_view s);

/// Arithmetic expression over the field: integers, + - * / ^ (integer exponents, possibly negative),
/// parentheses; the variable is "t" in F_p(t) and "x" (the class of the modulus variable) in F_{p^n},
/// where "g" names the multiplicative generator and "#k" the element with code k.
FieldElement parse_element(const FieldDescriptor& d, std::string_view s);

/// trace:beta=<elt> | arch:alpha=<rational or decimal> | residue:beta=<elt>:depth=<k> | trivial
AdditiveCharacter parse_additive_character(const FieldDescriptor& d, std::string_view s);
/// trivial | dlog:k=<int>[:g=<elt>] | valpar:S=<elt>,<elt>,... | sign
MultiplicativeCharacter parse_multiplicative_character(const FieldDescriptor& d, std::string_view s);

/// tower:p=2:sched=1,2,4,8 | addbox:d=720:R=100000 | dilbox:P=3:E=2:d=36:R=100000, with an optional
/// field=<descriptor> key for boxes (default Q).
FolnerRecipe parse_recipe(std::string_view s);

/// Splits "head:k1=v1:k2=v2" into head and key/value pairs; ParseError on malformed pieces.
std::pair<std::string, std::map<std::string, std::string>> split_literal(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);
std::int64_t parse_int(std::string_view s);

}  // namespace fklab
