#ifndef OPERT_SERIALIZE_HPP
#define OPERT_SERIALIZE_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opert/banded.hpp"
#include "opert/error.hpp"
#include "opert/moments.hpp"
#include "opert/onethree.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

using Json = nlohmann::ordered_json;

template <Scalar T>
Json scalars_to_json(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(format_scalar(x));
  return a;
}

/// Accepts "p/q" or decimal strings as well as plain JSON numbers.
template <Scalar T>
T scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
  if (j.is_number()) return parse_scalar<T>(j.dump());
  throw Error(ErrorKind::ParseError, "expected a scalar, got " + j.dump());
}

template <Scalar T>
std::vector<T> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of scalars");
  std::vector<T> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(scalar_from_json<T>(x));
  return out;
}

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::ParseError, std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace detail

template <Scalar T>
Json to_json(const RecurrenceCoefficients<T>& rec) {
  Json j;
  j["beta"] = scalars_to_json(std::vector<T>(rec.betas().begin(), rec.betas().end()));
  j["gamma"] = scalars_to_json(std::vector<T>(rec.gammas().begin(), rec.gammas().end()));
  j["n_max"] = rec.n_max();
  return j;
}

template <Scalar T>
RecurrenceCoefficients<T> recurrence_from_json(const Json& j) {
  auto beta = scalars_from_json<T>(detail::field(j, "beta"));
  auto gamma = scalars_from_json<T>(detail::field(j, "gamma"));
  if (j.contains("n_max")) {
    const auto n = j.at("n_max").get<std::size_t>();
    if (beta.size() < n + 1 || gamma.size() < n)
      throw Error(ErrorKind::ParseError, "recurrence shorter than its n_max");
    beta.resize(n + 1);
    gamma.resize(n);
  } else if (gamma.size() + 1 > beta.size()) {
    gamma.resize(beta.empty() ? 0 : beta.size() - 1);
  } else {
    beta.resize(gamma.size() + 1);
  }
  try {
    return RecurrenceCoefficients<T>(std::move(beta), std::move(gamma));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

template <Scalar T>
Json to_json(const MomentFunctional<T>& u) {
  Json j;
  j["moments"] = scalars_to_json(u.moments());
  j["n_max"] = u.n_max();
  return j;
}

template <Scalar T>
MomentFunctional<T> moments_from_json(const Json& j) {
  return MomentFunctional<T>(scalars_from_json<T>(detail::field(j, "moments")));
}

template <Scalar T>
Json to_json(const OneThreeRelation<T>& rel) {
  Json j;
  j["s"] = scalars_to_json(rel.s_values());
  j["t"] = scalars_to_json(rel.t_values());
  j["n_max"] = rel.n_max();
  return j;
}

template <Scalar T>
OneThreeRelation<T> relation_from_json(const Json& j) {
  try {
    return OneThreeRelation<T>(scalars_from_json<T>(detail::field(j, "s")), scalars_from_json<T>(detail::field(j, "t")));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, e.what());
  }
}

template <Scalar T>
Json to_json(const RelationSeeds<T>& s) {
  Json j;
  j["s1"] = format_scalar(s.s1);
  j["s2"] = format_scalar(s.s2);
  j["s3"] = format_scalar(s.s3);
  j["t2"] = format_scalar(s.t2);
  j["t3"] = format_scalar(s.t3);
  return j;
}

template <Scalar T>
RelationSeeds<T> seeds_from_json(const Json& j) {
  const auto get = [&](const char* k) { return scalar_from_json<T>(detail::field(j, k)); };
  return {get("s1"), get("s2"), get("s3"), get("t2"), get("t3")};
}

/// {"size": n, "bands": {"-1": [...], "0": [...], "1": [...]}}
template <Scalar T>
Json to_json(const BandedMatrix<T>& m) {
  Json j;
  j["size"] = m.size();
  Json bands = Json::object();
  for (long d = -static_cast<long>(m.lower()); d <= static_cast<long>(m.upper()); ++d)
    bands[std::to_string(d)] = scalars_to_json(m.band(d));
  j["bands"] = bands;
  return j;
}

template <Scalar T>
BandedMatrix<T> matrix_from_json(const Json& j) {
  const auto n = detail::field(j, "size").get<std::size_t>();
  const Json& bands = detail::field(j, "bands");
  std::size_t lower = 0, upper = 0;
  for (const auto& [key, _] : bands.items()) {
    const long d = std::stol(key);
    if (d < 0) lower = std::max<std::size_t>(lower, static_cast<std::size_t>(-d));
    else upper = std::max<std::size_t>(upper, static_cast<std::size_t>(d));
  }
  BandedMatrix<T> m(n, lower, upper);
  for (const auto& [key, values] : bands.items()) {
    const long d = std::stol(key);
    const auto v = scalars_from_json<T>(values);
    const std::size_t len = n - static_cast<std::size_t>(d < 0 ? -d : d);
    if (v.size() != len) throw Error(ErrorKind::ParseError, "band " + key + " has the wrong length");
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t i = d >= 0 ? k : k + static_cast<std::size_t>(-d);
      const std::size_t c = d >= 0 ? k + static_cast<std::size_t>(d) : k;
      m.set(i, c, v[k]);
    }
  }
  return m;
}

/// Dense form, one row per line, comma separated.
template <Scalar T>
std::string to_csv(const BandedMatrix<T>& m) {
  std::ostringstream os;
  for (const auto& row : m.dense()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_scalar(row[j]);
    os << '\n';
  }
  return os.str();
}

}  // namespace opert

#endif  // OPERT_SERIALIZE_HPP
