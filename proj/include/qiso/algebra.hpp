#pragma once

namespace qiso {

enum class Algebra { Iso2, M2 };

inline const char* algebra_name(Algebra a) { return a == Algebra::Iso2 ? "iso2" : "m2"; }

}  // namespace qiso
