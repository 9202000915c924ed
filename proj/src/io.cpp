#include "aggpatch/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <vector>

#include "aggpatch/error.hpp"

namespace aggpatch::io {
namespace {

Json pair(double a, double b) { return Json::array({a, b}); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string("expected a number for ") + what);
  return j.get<double>();
}

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("an interval is a [left, right] pair");
  return Interval(number(j[0], "interval left"), number(j[1], "interval right"));
}

void write_string(std::ostream& os, const std::string& s) {
  // reuse the library's escaping for strings
  os << Json(s).dump();
}

}  // namespace

Json to_json(const IntervalUnion& u) {
  Json out = Json::array();
  for (const Interval& iv : u.intervals()) out.push_back(pair(iv.left(), iv.right()));
  return out;
}

Json to_json(const CompactSet& k) {
  Json out = Json::object();
  out["hull"] = pair(k.hull().left(), k.hull().right());
  out["gaps"] = to_json(k.gaps());
  return out;
}

Json atoms_to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms()) {
    Json atom = Json::object();
    atom["x"] = a.position;
    atom["mass"] = a.mass;
    atoms.push_back(std::move(atom));
  }
  Json out = Json::object();
  out["atoms"] = std::move(atoms);
  return out;
}

Json to_json(const AtomicMeasure& mu, const ClosedInterval& bounds) {
  Json out = atoms_to_json(mu);
  out["bounds"] = pair(bounds.lo, bounds.hi);
  return out;
}

Json to_json(const FlowSnapshot& snap) {
  Json out = Json::object();
  out["t"] = snap.t;
  out["density"] = snap.density_level;
  out["support"] = to_json(snap.support);
  return out;
}

IntervalUnion interval_union_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("an interval union is an array of [left, right] pairs");
  std::vector<Interval> raw;
  raw.reserve(j.size());
  for (const Json& item : j) raw.push_back(interval_from_json(item));
  return IntervalUnion::normalize(raw);
}

CompactSet compact_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("hull")) {
    throw DomainError("a compact set is {\"hull\": [a, b], \"gaps\": [...]}");
  }
  const Interval hull = interval_from_json(j.at("hull"));
  IntervalUnion gaps = j.contains("gaps") ? interval_union_from_json(j.at("gaps")) : IntervalUnion{};
  return CompactSet(hull, std::move(gaps));
}

AtomicMeasure atomic_measure_from_json(const Json& j) {
  const Json& list = (j.is_object() && j.contains("atoms")) ? j.at("atoms") : j;
  if (!list.is_array()) throw DomainError("atoms must be an array");
  std::vector<Atom> atoms;
  atoms.reserve(list.size());
  for (const Json& item : list) {
    if (item.is_object()) {
      if (!item.contains("x") || !item.contains("mass")) {
        throw DomainError("an atom object needs \"x\" and \"mass\"");
      }
      atoms.push_back({number(item.at("x"), "atom x"), number(item.at("mass"), "atom mass")});
    } else if (item.is_array() && item.size() == 2) {
      atoms.push_back({number(item[0], "atom x"), number(item[1], "atom mass")});
    } else {
      throw DomainError("an atom is {\"x\", \"mass\"} or [x, mass]");
    }
  }
  return AtomicMeasure::from_atoms(std::move(atoms));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_json(std::ostream& os, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        write_string(os, it.key());
        os << ':';
        write_json(os, it.value());
      }
      os << '}';
      break;
    }
    case Json::value_t::array: {
      os << '[';
      bool first = true;
      for (const Json& item : j) {
        if (!first) os << ',';
        first = false;
        write_json(os, item);
      }
      os << ']';
      break;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

std::string dump(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

std::string content_hash(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump(j)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace aggpatch::io
