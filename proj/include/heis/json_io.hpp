#pragma once

#include "heis/heisenberg.hpp"
#include "heis/orbit.hpp"
#include "heis/scalar.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace heis::io {

using nlohmann::json;

enum class ScalarMode { exact, floating };

inline const char* mode_name(ScalarMode m) {
  return m == ScalarMode::exact ? "exact" : "float";
}

/// HEIS_MODE environment override, if set to "exact" or "float".
std::optional<ScalarMode> mode_from_env();

/// Exact when every scalar in the document is a fraction string or an
/// integer; floating as soon as one non-integer number appears.
ScalarMode infer_mode(const json& j);

template <class S>
struct json_scalar;

template <>
struct json_scalar<Rational> {
  static Rational from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
      return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_number())
      throw std::invalid_argument(
          "exact mode rejects non-integer JSON numbers; use a \"p/q\" string");
    throw std::invalid_argument("expected a scalar");
  }
  static json to(const Rational& v) { return json(format_rational(v)); }
};

template <>
struct json_scalar<double> {
  static double from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string())
      return scalar_traits<Rational>::to_double(
          parse_rational(j.get<std::string>()));
    throw std::invalid_argument("expected a scalar");
  }
  static json to(double v) { return json(v); }
};

template <class S>
std::vector<S> scalars_from(const json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected)
    throw std::invalid_argument("expected an array of " +
                                std::to_string(expected) + " scalars");
  std::vector<S> out;
  out.reserve(expected);
  for (const auto& item : j) out.push_back(json_scalar<S>::from(item));
  return out;
}

template <class S>
json scalars_to(const std::vector<S>& v) {
  json out = json::array();
  for (const S& c : v) out.push_back(json_scalar<S>::to(c));
  return out;
}

inline std::size_t dimension_of(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("missing positive integer field \"n\"");
  const auto n = j["n"].get<std::int64_t>();
  if (n < 1) throw std::invalid_argument("n must be positive");
  return std::size_t(n);
}

/// {"n": int, "x": [...], "y": [...], "mu": scalar}; x and y are the
/// covector coefficients of lambda.
template <class S>
DualElement<S> dual_from_json(const json& j) {
  const std::size_t n = dimension_of(j);
  if (!j.contains("x") || !j.contains("y") || !j.contains("mu"))
    throw std::invalid_argument("dual element needs fields x, y, mu");
  SympCovector<S> lambda{n, scalars_from<S>(j["x"], n), scalars_from<S>(j["y"], n)};
  return DualElement<S>{std::move(lambda), json_scalar<S>::from(j["mu"])};
}

template <class S>
json dual_to_json(const DualElement<S>& f) {
  return json{{"n", f.n()},
              {"x", scalars_to<S>(f.lambda.cx)},
              {"y", scalars_to<S>(f.lambda.cy)},
              {"mu", json_scalar<S>::to(f.mu)}};
}

template <class S>
json group_to_json(const GroupElement<S>& g) {
  return json{{"n", g.n()},
              {"x", scalars_to<S>(g.v.x)},
              {"y", scalars_to<S>(g.v.y)},
              {"r", json_scalar<S>::to(g.r)}};
}

template <class S>
GroupElement<S> group_from_json(const json& j) {
  const std::size_t n = dimension_of(j);
  if (!j.contains("x") || !j.contains("y") || !j.contains("r"))
    throw std::invalid_argument("group element needs fields x, y, r");
  SympVector<S> v{n, scalars_from<S>(j["x"], n), scalars_from<S>(j["y"], n)};
  return GroupElement<S>{std::move(v), json_scalar<S>::from(j["r"])};
}

template <class S>
json alg_to_json(const AlgElement<S>& a) {
  return json{{"n", a.n()},
              {"x", scalars_to<S>(a.x.x)},
              {"y", scalars_to<S>(a.x.y)},
              {"xi", json_scalar<S>::to(a.xi)}};
}

template <class S>
AlgElement<S> alg_from_json(const json& j) {
  const std::size_t n = dimension_of(j);
  if (!j.contains("x") || !j.contains("y") || !j.contains("xi"))
    throw std::invalid_argument("algebra element needs fields x, y, xi");
  SympVector<S> x{n, scalars_from<S>(j["x"], n), scalars_from<S>(j["y"], n)};
  return AlgElement<S>{std::move(x), json_scalar<S>::from(j["xi"])};
}

/// Tuple input: {"n", "zeta", "d", "xi"} in the ghat parameterization, or
/// {"n", "matrix"} with a full (2n+2)^2 matrix (checked against ghat).
template <class S>
Matrix<S> tuple_from_json(const ExtendedForm<S>& E, const json& j,
                          const S& tol = S(0)) {
  const std::size_t n = E.n;
  const std::size_t m = E.dim();
  if (j.contains("matrix")) {
    const json& rows = j["matrix"];
    if (!rows.is_array() || rows.size() != m)
      throw std::invalid_argument("matrix must have " + std::to_string(m) + " rows");
    Matrix<S> M(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = scalars_from<S>(rows[i], m);
      for (std::size_t c = 0; c < m; ++c) M(i, c) = row[c];
    }
    if (auto why = ghat_violation(E, M, tol))
      throw std::invalid_argument("not in ghat: " + *why);
    return M;
  }
  if (!j.contains("zeta") || !j.contains("d") || !j.contains("xi"))
    throw std::invalid_argument(
        "tuple needs either a matrix or the fields zeta, d, xi");
  const auto d = scalars_from<S>(j["d"], 2 * n);
  SympVector<S> dv = SympVector<S>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    dv.x[i] = d[i];
    dv.y[i] = d[n + i];
  }
  return make_ghat(E, GhatParams<S>{json_scalar<S>::from(j["zeta"]), std::move(dv),
                                    json_scalar<S>::from(j["xi"])});
}

template <class S>
json orbit_to_json(const OrbitDescriptor<S>& d, ScalarMode mode, bool verified) {
  json out{{"kind", d.kind == OrbitKind::generic ? "generic" : "fixed_point"},
           {"mu", json_scalar<S>::to(d.mu)},
           {"mode", mode_name(mode)},
           {"representative", dual_to_json(d.representative)}};
  if (d.normalizer) {
    out["normalizer"] = group_to_json(*d.normalizer);
    out["verified"] = verified;
  } else {
    out["normalizer"] = nullptr;
  }
  return out;
}

template <class S>
json reduction_to_json(const TupleReduction<S>& r, ScalarMode mode) {
  return json{{"modulus", json_scalar<S>::to(r.descriptor.modulus)},
              {"height", r.descriptor.height},
              {"zero_type_dim", r.descriptor.zero_type_dim},
              {"w", scalars_to<S>(r.w)},
              {"mode", mode_name(mode)}};
}

}  // namespace heis::io
