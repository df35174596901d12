#pragma once

#include <json.hpp>

#include "cantorwave/cantor.hpp"
#include "cantorwave/laurent.hpp"
#include "cantorwave/transfer.hpp"

namespace cantorwave {

using Json = nlohmann::ordered_json;

/// Integers are written as JSON numbers when they fit in int64 and as
/// decimal strings otherwise; both forms are accepted on input.
Json integer_to_json(const Integer& z);
Integer integer_from_json(const Json& j);

/// {"k": [num, den, num_im, den_im], ...}
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

/// {"level": n, "coeffs": {"k": [num, den], ...}, "half_scale": s}
Json to_json(const CellFunction& f);
CellFunction cell_function_from_json(const Json& j);

/// {"iterates": [[n, const_re, const_im, mass], ...], "limit": ..., "converged": bool}
/// Rationals are rendered as "num/den" strings.
Json to_json(const ConvergenceReport& r);

/// {"num": ..., "den": ..., "float": ...}
Json rational_record(const Rational& q);

}  // namespace cantorwave
