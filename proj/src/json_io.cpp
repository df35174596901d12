#include "cantorwave/json_io.hpp"

#include <stdexcept>
#include <string>

namespace cantorwave {

namespace {

std::int64_t parse_key(const std::string& key) {
  std::size_t used = 0;
  const long long v = std::stoll(key, &used);
  if (used != key.size()) throw std::invalid_argument("json: non-integer key \"" + key + "\"");
  return v;
}

Rational rational_from(const Json& num, const Json& den) {
  const Integer d = integer_from_json(den);
  if (d == 0) throw std::invalid_argument("json: zero denominator");
  Rational q(integer_from_json(num), d);
  q.canonicalize();
  return q;
}

}  // namespace

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("json: expected an integer or integer string");
}

Json to_json(const LaurentPoly& p) {
  Json out = Json::object();
  for (const auto& [k, c] : p.coeffs()) {
    out[std::to_string(k)] = Json::array({integer_to_json(c.re.get_num()), integer_to_json(c.re.get_den()),
                                          integer_to_json(c.im.get_num()), integer_to_json(c.im.get_den())});
  }
  return out;
}

LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("json: Laurent polynomial must be an object");
  LaurentPoly p;
  for (const auto& [key, v] : j.items()) {
    if (!v.is_array() || (v.size() != 4 && v.size() != 2)) {
      throw std::invalid_argument("json: coefficient must be [num, den] or [num, den, num_im, den_im]");
    }
    RatC c(rational_from(v[0], v[1]), v.size() == 4 ? rational_from(v[2], v[3]) : Rational(0));
    p.accumulate(parse_key(key), c);
  }
  return p;
}

Json to_json(const CellFunction& f) {
  Json coeffs = Json::object();
  for (const auto& [k, c] : f.coeffs()) {
    coeffs[std::to_string(k)] = Json::array({integer_to_json(c.get_num()), integer_to_json(c.get_den())});
  }
  return Json{{"level", f.level()}, {"coeffs", coeffs}, {"half_scale", f.half_scale()}};
}

CellFunction cell_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("coeffs")) {
    throw std::invalid_argument("json: cell function needs \"level\" and \"coeffs\"");
  }
  CellFunction::Map m;
  for (const auto& [key, v] : j.at("coeffs").items()) {
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument("json: cell coefficient must be [num, den]");
    m.emplace(parse_key(key), rational_from(v[0], v[1]));
  }
  return CellFunction(j.at("level").get<int>(), std::move(m), j.value("half_scale", 0));
}

Json to_json(const ConvergenceReport& r) {
  Json iterates = Json::array();
  for (const auto& it : r.iterates) {
    iterates.push_back(Json::array({it.n, it.constant_part.re.get_str(), it.constant_part.im.get_str(),
                                    it.nonconstant_l1_mass.get_str()}));
  }
  Json out;
  out["iterates"] = std::move(iterates);
  if (r.limit) {
    out["limit"] = Json::array({r.limit->re.get_str(), r.limit->im.get_str()});
  } else {
    out["limit"] = "not converged";
  }
  out["converged"] = r.converged();
  out["iterations_used"] = r.iterations_used;
  out["error_bound"] = rational_record(r.error_bound());
  return out;
}

Json rational_record(const Rational& q) {
  return Json{{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}, {"float", q.get_d()}};
}

}  // namespace cantorwave
