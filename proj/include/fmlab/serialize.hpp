#pragma once

// JSON forms of the library's values. Vectors, atoms and group elements use
// their textual forms; sets are written in canonical (sorted) order.

#include <string>
#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/counterexample.hpp"
#include "fmlab/error.hpp"
#include "fmlab/fp.hpp"
#include "fmlab/supports.hpp"
#include "fmlab/thin.hpp"
#include "json.hpp"

namespace fmlab {

using Json = nlohmann::ordered_json;

inline Json to_json(const Vector& v) { return to_string(v); }

inline Json to_json(std::span<const Vector> vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_string(v));
  return out;
}

inline Json to_json(const GroupElement& g) { return to_string(g); }

inline Json to_json(const HFObject& x) {
  switch (x.kind()) {
    case HFObject::Kind::atom:
      return Json{{"atom", to_string(x.as_atom())}};
    case HFObject::Kind::set:
    case HFObject::Kind::tuple: {
      Json elems = Json::array();
      for (const auto& e : x.elements()) elems.push_back(to_json(e));
      return Json{{x.is_set() ? "set" : "tuple", std::move(elems)}};
    }
  }
  throw ConsistencyError("unknown HF object kind");
}

namespace detail {

inline const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string require_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::uint64_t require_natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ValidationError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

}  // namespace detail

inline Vector vector_from_json(const Json& j, Prime p) {
  return parse_vector(detail::require_string(j, "vector"), p);
}

inline std::vector<Vector> vectors_from_json(const Json& j, Prime p) {
  if (!j.is_array()) throw ValidationError("vector list must be an array");
  std::vector<Vector> out;
  for (const auto& e : j) out.push_back(vector_from_json(e, p));
  return out;
}

inline HFObject hf_from_json(const Json& j, Prime p) {
  if (!j.is_object() || j.size() != 1) {
    throw ValidationError("HF object must be an object with exactly one of atom, set, tuple");
  }
  if (j.contains("atom")) return HFObject::atom(parse_atom(detail::require_string(j["atom"], "atom"), p));
  const bool is_set = j.contains("set");
  if (!is_set && !j.contains("tuple")) throw ValidationError("HF object must have atom, set or tuple");
  const Json& elems = is_set ? j["set"] : j["tuple"];
  if (!elems.is_array()) throw ValidationError("HF object elements must be an array");
  std::vector<HFObject> out;
  for (const auto& e : elems) out.push_back(hf_from_json(e, p));
  return is_set ? HFObject::set(std::move(out)) : HFObject::tuple(std::move(out));
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Residue>) {
    return *v;
  } else {
    return to_json(*v);
  }
}

inline Json to_json(const ReductionStep& s) {
  return Json{{"B_before", to_json(s.before)},
              {"h", optional_json(s.h)},
              {"m", optional_json(s.m)},
              {"n", optional_json(s.n)},
              {"b", optional_json(s.b)},
              {"shortcut", s.shortcut}};
}

inline Json to_json(const ReductionTrace& trace) {
  Json out = Json::array();
  for (const auto& s : trace) out.push_back(to_json(s));
  return out;
}

inline Json to_json(const ThinCertificate& c) {
  Json j{{"kind", kind_name(c.kind)}, {"p", c.prime}};
  switch (c.kind) {
    case ThinCertificate::Kind::finite_set:
    case ThinCertificate::Kind::span_of_finite:
      j["vectors"] = to_json(c.vectors);
      break;
    case ThinCertificate::Kind::finite_union: {
      Json kids = Json::array();
      for (const auto& k : c.children) kids.push_back(to_json(k));
      j["children"] = std::move(kids);
      break;
    }
    case ThinCertificate::Kind::extracted_stream: {
      Json cps = Json::array();
      for (const auto& cp : c.checkpoints) cps.push_back(Json::array({cp.n, cp.d}));
      j["checkpoints"] = std::move(cps);
      break;
    }
  }
  return j;
}

inline ThinCertificate certificate_from_json(const Json& j) {
  const std::string kind = detail::require_string(detail::require_field(j, "kind"), "kind");
  const auto p_raw = detail::require_natural(detail::require_field(j, "p"), "p");
  if (!is_prime(p_raw)) throw ValidationError("certificate prime " + std::to_string(p_raw) + " is not prime");
  const Prime p(p_raw);
  if (kind == "finite-set" || kind == "span-of-finite") {
    auto vs = vectors_from_json(detail::require_field(j, "vectors"), p);
    return kind == "finite-set" ? ThinCertificate::finite(p, std::move(vs)) : ThinCertificate::span(p, std::move(vs));
  }
  if (kind == "finite-union") {
    const Json& kids = detail::require_field(j, "children");
    if (!kids.is_array()) throw ValidationError("children must be an array");
    std::vector<ThinCertificate> parts;
    for (const auto& k : kids) parts.push_back(certificate_from_json(k));
    return ThinCertificate::union_of(p, std::move(parts));
  }
  if (kind == "extracted-stream") {
    const Json& cps = detail::require_field(j, "checkpoints");
    if (!cps.is_array()) throw ValidationError("checkpoints must be an array");
    std::vector<Checkpoint> out;
    for (const auto& cp : cps) {
      if (!cp.is_array() || cp.size() != 2) throw ValidationError("checkpoint must be [n, d]");
      out.push_back({detail::require_natural(cp[0], "checkpoint n"), detail::require_natural(cp[1], "checkpoint d")});
    }
    return ThinCertificate::stream(p, std::move(out));
  }
  throw ValidationError("unknown certificate kind '" + kind + "'");
}

inline Json to_json(const RefutationReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json before = Json::array(), after = Json::array();
    for (const auto& e : l.before) before.push_back(to_json(e));
    for (const auto& e : l.after) after.push_back(to_json(e));
    levels.push_back(Json{{"n", l.level}, {"moved", l.moved}, {"before", std::move(before)}, {"after", std::move(after)}});
  }
  return Json{{"S", r.support}, {"i", r.level}, {"g", to_json(r.swap)}, {"levels", std::move(levels)}};
}

}  // namespace fmlab
